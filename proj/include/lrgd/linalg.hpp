#ifndef LRGD_LINALG_HPP
#define LRGD_LINALG_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "lrgd/matrix.hpp"

namespace lrgd {

/// 64-bit seed for the repo-wide PRNG. Identical seed + identical call
/// sequence yields bit-identical output on every platform.
struct Seed {
    std::uint64_t value = 0;
};

/// Deterministic child-seed derivation (splitmix64 finalizer). Used wherever
/// one master seed has to fan out into independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// The one PRNG of the repo: mt19937_64 for the uniform bits, single-draw
/// Box-Muller for the Gaussians. std::normal_distribution is deliberately
/// avoided (its output is implementation-defined).
class Rng {
public:
    explicit Rng(Seed seed) : gen_(seed.value) {}

    /// Uniform in the open interval (0, 1), 53-bit resolution.
    double uniform01() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via Box-Muller, one draw per two uniforms.
    double normal();

private:
    std::mt19937_64 gen_;
};

/// i.i.d. Normal(0, std^2) entries, filled in row-major order.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, Seed seed);

/// Largest singular value by power iteration on the Gram matrix.
/// Deterministic all-ones start; relative tolerance 1e-12; throws on
/// non-convergence within 5000 iterations (message carries last estimate).
double spectral_norm(const DenseMatrix& a);

/// Thin SVD a = left * diag(singulars) * right with q = min(rows, cols);
/// left has orthonormal columns, right has orthonormal rows, singulars are
/// sorted nonincreasing.
struct ThinSvd {
    DenseMatrix left;               // rows x q
    std::vector<double> singulars;  // length q, nonincreasing
    DenseMatrix right;              // q x cols
};

/// One-sided Jacobi SVD. Cyclic sweeps until every Gram rotation falls below
/// 1e-13 relative; throws if 60 sweeps do not suffice.
ThinSvd thin_svd(const DenseMatrix& a);

/// Extremal eigenvalues of a (near-)symmetric matrix. The input is
/// symmetrized as (s + s^T)/2 first; GD imbalance matrices pick up ~1e-15
/// of asymmetry which would otherwise have to be rejected.
std::pair<double, double> sym_eig_range(const DenseMatrix& s);

/// Full eigenvalue spectrum of a symmetric matrix (cyclic Jacobi), unsorted.
std::vector<double> sym_eig_all(const DenseMatrix& s);

}  // namespace lrgd

#endif
