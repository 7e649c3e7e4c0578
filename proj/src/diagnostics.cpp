#include "lrgd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrgd {

BlockView split_blocks(const DenseMatrix& F, const DenseMatrix& G, std::size_t r) {
    const std::size_t n = F.rows();
    const std::size_t k = F.cols();
    if (r >= n) throw std::invalid_argument("split_blocks: r must be below n");
    if (G.rows() != n || G.cols() != k) throw std::invalid_argument("split_blocks: shape mismatch");
    BlockView b;
    b.U = DenseMatrix(r, k);
    b.V = DenseMatrix(r, k);
    b.J = DenseMatrix(n - r, k);
    b.K = DenseMatrix(n - r, k);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            b.U(i, j) = F(i, j);
            b.V(i, j) = G(i, j);
        }
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            b.J(i - r, j) = F(i, j);
            b.K(i - r, j) = G(i, j);
        }
    return b;
}

AngleStat angle_stat(const DenseMatrix& X) {
    const std::size_t n = X.rows();
    std::vector<std::size_t> usable;
    std::vector<double> norm2(n);
    AngleStat out;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : X.row(i)) s += v * v;
        norm2[i] = s;
        if (std::sqrt(s) < 1e-300)
            ++out.excluded;
        else
            usable.push_back(i);
    }
    if (usable.size() < 2) throw std::invalid_argument("angle_stat: fewer than 2 usable rows");
    for (std::size_t a = 0; a + 1 < usable.size(); ++a) {
        for (std::size_t b = a + 1; b < usable.size(); ++b) {
            const std::size_t i = usable[a], j = usable[b];
            double d = 0.0;
            auto xi = X.row(i);
            auto xj = X.row(j);
            for (std::size_t c = 0; c < xi.size(); ++c) d += xi[c] * xj[c];
            out.max_sq_cos = std::max(out.max_sq_cos, d * d / (norm2[i] * norm2[j]));
        }
    }
    return out;
}

NullSpaceDiag null_space_diagnostic(const DenseMatrix& F, const DenseMatrix& K) {
    const std::size_t n = F.rows();
    const std::size_t k = F.cols();
    if (K.rows() >= n) throw std::invalid_argument("null_space_diagnostic: K has too many rows");
    const std::size_t r = n - K.rows();
    if (k <= r) throw std::invalid_argument("null_space_diagnostic: requires k > r");

    DenseMatrix U(r, k);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j) U(i, j) = F(i, j);

    ThinSvd svd = thin_svd(U);
    NullSpaceDiag out;
    if (svd.singulars.back() < 1e-12 * svd.singulars.front()) out.degenerate = true;

    // W = rows of svd.right spanning row(U); complete with canonical vectors.
    const std::size_t q = svd.singulars.size();  // == r for r < k
    DenseMatrix basis(k, k);                     // rows: W then W_perp
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < k; ++j) basis(i, j) = svd.right(i, j);
    std::size_t have = q;
    for (std::size_t cand = 0; cand < k && have < k; ++cand) {
        std::vector<double> e(k, 0.0);
        e[cand] = 1.0;
        for (std::size_t row = 0; row < have; ++row) {
            double proj = 0.0;
            for (std::size_t j = 0; j < k; ++j) proj += basis(row, j) * e[j];
            for (std::size_t j = 0; j < k; ++j) e[j] -= proj * basis(row, j);
        }
        double norm = 0.0;
        for (double v : e) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 0.5) continue;
        for (std::size_t j = 0; j < k; ++j) basis(have, j) = e[j] / norm;
        ++have;
    }
    if (have < k) throw std::runtime_error("null_space_diagnostic: basis completion failed");

    DenseMatrix Wperp(k - q, k);
    for (std::size_t i = q; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) Wperp(i - q, j) = basis(i, j);
    out.value = spectral_norm(matmul(K, transpose(Wperp)));
    return out;
}

TraceRecord record(const GDState& state, const ProblemInstance& inst) {
    TraceRecord rec;
    rec.t = state.t;
    DenseMatrix D = sub(reconstruction(state), inst.truth.Sigma);
    rec.loss_fro2 = frobenius_norm2(D);
    rec.loss_spec = spectral_norm(D);
    rec.train_loss = train_loss(state, inst);

    const std::size_t r = inst.truth.r;
    if (state.mode == Mode::symmetric) {
        double pot = 0.0;
        for (std::size_t i = r; i < state.F.rows(); ++i)
            for (double v : state.F.row(i)) pot += v * v;
        rec.potential_At = pot;
        AngleStat ang = angle_stat(state.F);
        rec.theta_max = ang.max_sq_cos;
        rec.theta_excluded = ang.excluded;
        return rec;
    }

    DenseMatrix Delta = sub(matmul(transpose(state.F), state.F), matmul(transpose(state.G), state.G));
    auto [dmin, dmax] = sym_eig_range(Delta);
    rec.delta_min = dmin;
    rec.delta_max = dmax;

    if (r >= 1 && r < state.F.rows()) {
        BlockView b = split_blocks(state.F, state.G, r);
        DenseMatrix Sigma_r(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) Sigma_r(i, j) = inst.truth.Sigma(i, j);
        const double uv = spectral_norm(sub(matmul(b.U, transpose(b.V)), Sigma_r));
        const double uk = spectral_norm(matmul(b.U, transpose(b.K)));
        const double jv = spectral_norm(matmul(b.J, transpose(b.V)));
        const double jk = spectral_norm(matmul(b.J, transpose(b.K)));
        rec.M_t = std::max({uv, uk, jv});
        rec.P_t = std::max(jv, uv);
        rec.S_t = std::max(uk, jk);
        rec.norm_K = spectral_norm(b.K);
        rec.norm_J = spectral_norm(b.J);
        rec.norm_UmV = spectral_norm(sub(b.U, b.V));
        if (inst.k > r) rec.k_perp = null_space_diagnostic(state.F, b.K).value;
    }
    return rec;
}

bool imbalance_drift_check(const GDState& cur, const GDState& next, double eta,
                           const ProblemInstance& inst) {
    if (cur.mode != Mode::asymmetric) throw std::logic_error("imbalance_drift_check: asymmetric only");
    DenseMatrix d_cur = sub(matmul(transpose(cur.F), cur.F), matmul(transpose(cur.G), cur.G));
    DenseMatrix d_next = sub(matmul(transpose(next.F), next.F), matmul(transpose(next.G), next.G));
    const double lhs = spectral_norm(sub(d_next, d_cur));
    const double R = spectral_norm(normal_residual(cur, inst));
    const double fg = std::max(spectral_norm(cur.F), spectral_norm(cur.G));
    const double rhs = 2.0 * eta * eta * R * R * fg * fg;
    // additive slack: Delta is assembled from O(1)-sized products, so its
    // difference carries ~eps * ||F||^2 of roundoff even when R is tiny
    const double slack = 1e-12 * std::max(fg * fg, 1.0);
    return lhs <= rhs + slack;
}

Series extract_series(const std::vector<TraceRecord>& trace, const std::string& field) {
    Series s;
    s.reserve(trace.size());
    for (const TraceRecord& r : trace) {
        std::optional<double> v;
        if (field == "loss_fro2")
            v = r.loss_fro2;
        else if (field == "loss_spec")
            v = r.loss_spec;
        else if (field == "train_loss")
            v = r.train_loss;
        else if (field == "potential_At")
            v = r.potential_At;
        else if (field == "theta_max")
            v = r.theta_max;
        else if (field == "delta_min")
            v = r.delta_min;
        else if (field == "delta_max")
            v = r.delta_max;
        else if (field == "M_t")
            v = r.M_t;
        else if (field == "P_t")
            v = r.P_t;
        else if (field == "S_t")
            v = r.S_t;
        else if (field == "norm_K")
            v = r.norm_K;
        else if (field == "norm_J")
            v = r.norm_J;
        else if (field == "norm_UmV")
            v = r.norm_UmV;
        else if (field == "k_perp")
            v = r.k_perp;
        else
            throw std::invalid_argument("extract_series: unknown field '" + field + "'");
        if (v) s.emplace_back(r.t, *v);
    }
    return s;
}

std::pair<long, long> default_fit_window(const Series& series) {
    Series pos;
    for (auto& [t, v] : series)
        if (v > 0.0) pos.emplace_back(t, v);
    if (pos.empty()) throw std::runtime_error("default_fit_window: no positive samples");
    const std::size_t start = pos.size() / 2;
    return {pos[start].first, pos.back().first};
}

namespace {

RateFit ols_fit(const std::vector<std::pair<double, double>>& xy, RateFit proto) {
    // two-pass centered sums: the naive sum-of-squares form cancels
    // catastrophically on near-constant series
    const double n = static_cast<double>(xy.size());
    double mx = 0, my = 0;
    for (auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double vxx = 0, vyy = 0, vxy = 0;
    for (auto& [x, y] : xy) {
        vxx += (x - mx) * (x - mx);
        vyy += (y - my) * (y - my);
        vxy += (x - mx) * (y - my);
    }
    if (vxx <= 0.0) throw std::runtime_error("rate fit: degenerate abscissa");
    proto.value = vxy / vxx;
    if (vyy <= n * 1e-24 * std::max(1.0, my * my)) {
        // constant series: slope ~0 is exact but r2 is undefined
        proto.value = 0.0;
        proto.degenerate = true;
        proto.r2 = 0.0;
    } else {
        proto.r2 = (vxy * vxy) / (vxx * vyy);
    }
    proto.samples = xy.size();
    return proto;
}

}  // namespace

RateFit fit_linear_rate(const Series& series, long t_start, long t_end) {
    std::vector<std::pair<double, double>> xy;
    for (auto& [t, v] : series) {
        if (t < t_start || t > t_end) continue;
        if (v <= 0.0)
            throw std::runtime_error("fit_linear_rate: nonpositive value at t = " + std::to_string(t));
        xy.emplace_back(static_cast<double>(t), std::log(v));
    }
    if (xy.size() < 3) throw std::runtime_error("fit_linear_rate: fewer than 3 samples in window");
    RateFit proto;
    proto.kind = RateFit::Kind::linear;
    proto.t_start = t_start;
    proto.t_end = t_end;
    RateFit fit = ols_fit(xy, proto);
    fit.value = std::exp(fit.value);  // slope of ln(y) -> per-step contraction
    return fit;
}

RateFit fit_power_rate(const Series& series, long t_start, long t_end) {
    std::vector<std::pair<double, double>> xy;
    for (auto& [t, v] : series) {
        if (t < t_start || t > t_end) continue;
        if (t < 1) throw std::runtime_error("fit_power_rate: window must have t >= 1");
        if (v <= 0.0)
            throw std::runtime_error("fit_power_rate: nonpositive value at t = " + std::to_string(t));
        xy.emplace_back(std::log(static_cast<double>(t)), std::log(v));
    }
    if (xy.size() < 3) throw std::runtime_error("fit_power_rate: fewer than 3 samples in window");
    RateFit proto;
    proto.kind = RateFit::Kind::power;
    proto.t_start = t_start;
    proto.t_end = t_end;
    return ols_fit(xy, proto);
}

}  // namespace lrgd
