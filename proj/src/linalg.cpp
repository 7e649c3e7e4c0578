#include "lrgd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace lrgd {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer on master + golden-ratio stride.
    std::uint64_t z = master + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, Seed seed) {
    if (std_dev <= 0.0) throw std::invalid_argument("gaussian_matrix: std must be positive");
    Rng rng(seed);
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) v = std_dev * rng.normal();
    return m;
}

namespace {

// Power iteration for the top eigenvalue of the Gram matrix g = a^T a (or
// a a^T, whichever is smaller). g is formed once; each iterate is one matvec.
// Near-degenerate top eigenvalues stall the iteration; the caller falls back
// to the Jacobi eigensolver in that case instead of failing.
std::optional<double> gram_top_eigenvalue(const DenseMatrix& g) {
    const std::size_t n = g.rows();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w(n);
    double lambda = 0.0;
    bool reseeded = false;
    const int max_iter = 5000;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            auto gi = g.row(i);
            for (std::size_t j = 0; j < n; ++j) s += gi[j] * v[j];
            w[i] = s;
        }
        double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (norm < 1e-300) {
            if (reseeded) return 0.0;  // matrix annihilates both start vectors
            reseeded = true;
            for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i + 1);
            double vn = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
            for (double& x : v) x /= vn;
            lambda = 0.0;
            continue;
        }
        const double prev = lambda;
        lambda = norm;  // Rayleigh estimate: ||g v|| with ||v|| = 1
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (it > 0 && std::abs(lambda - prev) <= 1e-12 * std::max(lambda, 1e-300)) return lambda;
    }
    return std::nullopt;  // stalled: top of the spectrum is (near-)degenerate
}

}  // namespace

double spectral_norm(const DenseMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    DenseMatrix g = (a.rows() >= a.cols()) ? matmul(transpose(a), a) : matmul(a, transpose(a));
    if (std::optional<double> top = gram_top_eigenvalue(g)) return std::sqrt(*top);
    std::vector<double> eig = sym_eig_all(g);
    return std::sqrt(std::max(0.0, *std::max_element(eig.begin(), eig.end())));
}

namespace {

// One-sided Jacobi on a tall matrix (rows >= cols): rotate column pairs of b
// until all columns are mutually orthogonal, accumulating rotations in v.
// Returns the largest relative off-diagonal correction of the final sweep.
void jacobi_orthogonalize(DenseMatrix& b, DenseMatrix& v) {
    const std::size_t n = b.cols();
    const std::size_t m = b.rows();
    const double tol = 1e-13;
    const int max_sweeps = 60;
    double off = 0.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double bp = b(i, p), bq = b(i, q);
                    app += bp * bp;
                    aqq += bq * bq;
                    apq += bp * bq;
                }
                if (app == 0.0 || aqq == 0.0) continue;
                const double rel = std::abs(apq) / std::sqrt(app * aqq);
                off = std::max(off, rel);
                if (rel <= tol) continue;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double bp = b(i, p), bq = b(i, q);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (off <= tol) return;
    }
    throw std::runtime_error("thin_svd: Jacobi sweep budget exhausted, residual off-diagonal " +
                             std::to_string(off));
}

// Orthonormal column completion for (numerically) zero singular directions:
// Gram-Schmidt canonical basis vectors against the existing columns.
void complete_columns(DenseMatrix& u, std::size_t filled) {
    const std::size_t m = u.rows();
    const std::size_t q = u.cols();
    std::size_t next = filled;
    for (std::size_t cand = 0; cand < m && next < q; ++cand) {
        std::vector<double> e(m, 0.0);
        e[cand] = 1.0;
        for (std::size_t j = 0; j < next; ++j) {
            double proj = 0.0;
            for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * e[i];
            for (std::size_t i = 0; i < m; ++i) e[i] -= proj * u(i, j);
        }
        double norm = std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
        if (norm < 0.5) continue;  // candidate mostly inside the span, try next
        for (std::size_t i = 0; i < m; ++i) u(i, next) = e[i] / norm;
        ++next;
    }
    if (next < q) throw std::runtime_error("thin_svd: failed to complete orthonormal basis");
}

ThinSvd thin_svd_tall(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    DenseMatrix b = a;
    DenseMatrix v = DenseMatrix::identity(n);
    jacobi_orthogonalize(b, v);

    std::vector<double> sing(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += b(i, j) * b(i, j);
        sing[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sing[x] > sing[y]; });

    const double cutoff = sing.empty() ? 0.0 : sing[order[0]] * 1e-300;
    ThinSvd out;
    out.left = DenseMatrix(m, n);
    out.right = DenseMatrix(n, n);
    out.singulars.resize(n);
    std::size_t filled = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.singulars[j] = sing[src];
        for (std::size_t i = 0; i < n; ++i) out.right(j, i) = v(i, src);
        if (sing[src] > cutoff && sing[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.left(i, j) = b(i, src) / sing[src];
            ++filled;
        }
    }
    if (filled < n) {
        // zero columns come last after sorting; pack nonzero ones first
        complete_columns(out.left, filled);
        for (std::size_t j = filled; j < n; ++j) out.singulars[j] = 0.0;
    }
    return out;
}

}  // namespace

ThinSvd thin_svd(const DenseMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("thin_svd: empty matrix");
    if (a.rows() >= a.cols()) return thin_svd_tall(a);
    ThinSvd t = thin_svd_tall(transpose(a));
    // a = right^T * diag(s) * left^T of the transposed decomposition
    ThinSvd out;
    out.left = transpose(t.right);
    out.singulars = std::move(t.singulars);
    out.right = transpose(t.left);
    return out;
}

std::vector<double> sym_eig_all(const DenseMatrix& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("sym_eig_all: matrix not square");
    const std::size_t n = s.rows();
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));

    const double scale = frobenius_norm(a);
    const double tol = 1e-12 * std::max(scale, 1e-300);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                off = std::max(off, std::abs(apq));
                if (std::abs(apq) <= tol) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - sn * aqi;
                    a(q, i) = sn * api + c * aqi;
                }
            }
        }
        if (off <= tol) break;
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    return eig;
}

std::pair<double, double> sym_eig_range(const DenseMatrix& s) {
    std::vector<double> eig = sym_eig_all(s);
    auto [mn, mx] = std::minmax_element(eig.begin(), eig.end());
    return {*mn, *mx};
}

}  // namespace lrgd
