#include "lrgd/sensing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lrgd {

MeasurementOperator MeasurementOperator::make_gaussian(std::size_t n1, std::size_t n2,
                                                       std::size_t m, Seed seed) {
    if (n1 < 1 || n2 < 1 || m < 1)
        throw std::invalid_argument("make_gaussian_operator: dimensions must be >= 1");
    MeasurementOperator op;
    op.kind_ = Kind::gaussian;
    op.n1_ = n1;
    op.n2_ = n2;
    op.m_ = m;
    const double std_dev = 1.0 / std::sqrt(static_cast<double>(m));
    op.flat_ = DenseMatrix(m, n1 * n2);
    for (std::size_t i = 0; i < m; ++i) {
        Rng rng(Seed{derive_seed(seed.value, i)});
        auto row = op.flat_.row(i);
        for (double& v : row) v = std_dev * rng.normal();
    }
    op.flat_t_ = transpose(op.flat_);
    return op;
}

MeasurementOperator MeasurementOperator::make_identity(std::size_t n1, std::size_t n2) {
    MeasurementOperator op;
    op.kind_ = Kind::identity;
    op.n1_ = n1;
    op.n2_ = n2;
    return op;
}

DenseMatrix MeasurementOperator::sensing_matrix(std::size_t i) const {
    if (kind_ != Kind::gaussian) throw std::logic_error("sensing_matrix: identity kind has none");
    auto row = flat_.row(i);
    return DenseMatrix(n1_, n2_, std::vector<double>(row.begin(), row.end()));
}

std::vector<double> MeasurementOperator::apply(const DenseMatrix& M) const {
    if (M.rows() != n1_ || M.cols() != n2_)
        throw std::invalid_argument("apply: matrix is " + std::to_string(M.rows()) + "x" +
                                    std::to_string(M.cols()) + ", operator expects " +
                                    std::to_string(n1_) + "x" + std::to_string(n2_));
    if (kind_ == Kind::identity)
        return std::vector<double>(M.data().begin(), M.data().end());
    std::vector<double> y(m_);
    auto md = M.data();
    for (std::size_t i = 0; i < m_; ++i) {
        auto ai = flat_.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < md.size(); ++j) s += ai[j] * md[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix MeasurementOperator::adjoint(const std::vector<double>& z) const {
    if (z.size() != m())
        throw std::invalid_argument("adjoint: vector length " + std::to_string(z.size()) +
                                    " does not match m = " + std::to_string(m()));
    if (kind_ == Kind::identity)
        return DenseMatrix(n1_, n2_, std::vector<double>(z.begin(), z.end()));
    DenseMatrix out(n1_, n2_);
    auto od = out.data();
    for (std::size_t j = 0; j < od.size(); ++j) {
        auto col = flat_t_.row(j);
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s += col[i] * z[i];
        od[j] = s;
    }
    return out;
}

DenseMatrix MeasurementOperator::normal(const DenseMatrix& M) const {
    if (kind_ == Kind::identity) {
        if (M.rows() != n1_ || M.cols() != n2_)
            throw std::invalid_argument("normal: dimension mismatch");
        return M;
    }
    return adjoint(apply(M));
}

RipEstimate estimate_rip_delta(const MeasurementOperator& op, std::size_t probe_rank,
                               std::size_t trials, Seed seed) {
    if (probe_rank < 1 || trials < 1)
        throw std::invalid_argument("estimate_rip_delta: probe_rank and trials must be >= 1");
    RipEstimate est;
    est.trials = trials;
    est.rank_probed = probe_rank;
    double lo = 1e300, hi = -1e300;
    for (std::size_t t = 0; t < trials; ++t) {
        DenseMatrix a = gaussian_matrix(op.n1(), probe_rank, 1.0, Seed{derive_seed(seed.value, 2 * t)});
        DenseMatrix b = gaussian_matrix(op.n2(), probe_rank, 1.0, Seed{derive_seed(seed.value, 2 * t + 1)});
        DenseMatrix probe = matmul(a, transpose(b));
        const double fn = frobenius_norm(probe);
        if (fn == 0.0) continue;
        probe = scale(probe, 1.0 / fn);
        std::vector<double> y = op.apply(probe);
        double y2 = 0.0;
        for (double v : y) y2 += v * v;
        lo = std::min(lo, y2);
        hi = std::max(hi, y2);
    }
    est.delta_low = 1.0 - lo;
    est.delta_high = hi - 1.0;
    return est;
}

}  // namespace lrgd
