#ifndef LRGD_SENSING_HPP
#define LRGD_SENSING_HPP

#include <vector>

#include "lrgd/linalg.hpp"
#include "lrgd/matrix.hpp"

namespace lrgd {

/// Linear measurement operator y_i = tr(A_i^T M). Two kinds:
///   gaussian  - m dense sensing matrices with i.i.d. N(0, 1/m) entries
///   identity  - the identity map (matrix factorization special case);
///               apply flattens, adjoint un-flattens, adjoint∘apply == id.
///
/// The gaussian kind keeps every A_i dense, plus a flattened (m x n1*n2)
/// layout and its transpose so apply/adjoint run as contiguous matvecs.
class MeasurementOperator {
public:
    enum class Kind { gaussian, identity };

    static MeasurementOperator make_gaussian(std::size_t n1, std::size_t n2, std::size_t m,
                                             Seed seed);
    static MeasurementOperator make_identity(std::size_t n1, std::size_t n2);

    Kind kind() const { return kind_; }
    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t m() const { return kind_ == Kind::identity ? n1_ * n2_ : m_; }

    DenseMatrix sensing_matrix(std::size_t i) const;

    std::vector<double> apply(const DenseMatrix& M) const;
    DenseMatrix adjoint(const std::vector<double>& z) const;

    /// adjoint(apply(M)); shortcut to M itself for the identity kind so the
    /// matrix-factorization path is exact.
    DenseMatrix normal(const DenseMatrix& M) const;

private:
    MeasurementOperator() = default;

    Kind kind_ = Kind::identity;
    std::size_t n1_ = 0, n2_ = 0, m_ = 0;
    DenseMatrix flat_;    // m x (n1*n2), row i = vec(A_i)
    DenseMatrix flat_t_;  // (n1*n2) x m
};

/// Empirical lower bound on the RIP constant from random rank-probe_rank
/// matrices: ratio = ||A(M)||^2 / ||M||_F^2 over normalized probes. The true
/// constant is NP-hard to certify; this only bounds it from below.
struct RipEstimate {
    double delta_low = 0.0;
    double delta_high = 0.0;
    std::size_t trials = 0;
    std::size_t rank_probed = 0;
};

RipEstimate estimate_rip_delta(const MeasurementOperator& op, std::size_t probe_rank,
                               std::size_t trials, Seed seed);

}  // namespace lrgd

#endif
