#include "lrgd/accel.hpp"

#include <algorithm>
#include <cmath>

namespace lrgd {

bool trigger_check(const GDState& state, const ProblemInstance& inst, const AccelConfig& cfg) {
    if (state.mode != Mode::asymmetric) throw std::logic_error("trigger_check: asymmetric only");
    if (cfg.trigger_mode == AccelConfig::TriggerMode::fixed_iteration)
        return state.t == cfg.t_fire;
    return spectral_norm(normal_residual(state, inst)) <= cfg.gamma;
}

RebalanceResult rebalance_transform(const DenseMatrix& F, const DenseMatrix& G, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("rebalance_transform: beta must be positive");
    if (F.rows() != G.rows() || F.cols() != G.cols())
        throw std::invalid_argument("rebalance_transform: F and G must share a shape");
    const std::size_t k = F.cols();

    ThinSvd svd = thin_svd(F);  // F = P diag(d) Q, Q is k x k with orthonormal rows
    RebalanceResult out;
    out.smallest_d = svd.singulars.back();
    const double floor = 1e-8 * svd.singulars.front();
    std::vector<double> d = svd.singulars;
    for (double& v : d) {
        if (v < floor) {
            v = floor;
            ++out.clamped;
        }
    }

    // R = Q^T diag(beta/d), R^{-T} = Q^T diag(d/beta); the clamped d is used
    // on both sides so R R^{-1} = I holds exactly and FG^T is untouched.
    DenseMatrix R(k, k), Rinv_t(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            R(i, j) = svd.right(j, i) * (beta / d[j]);
            Rinv_t(i, j) = svd.right(j, i) * (d[j] / beta);
        }
    out.F = matmul(F, R);
    out.G = matmul(G, Rinv_t);
    return out;
}

AccelRun run_with_accel(const ProblemInstance& inst, GDState init, const GDConfig& gd_cfg,
                        const AccelConfig& accel_cfg, const Observer& observer) {
    if (init.mode != Mode::asymmetric) throw std::invalid_argument("run_with_accel: asymmetric only");
    if (gd_cfg.log_stride < 1) throw std::invalid_argument("run_with_accel: log_stride must be >= 1");

    AccelRun out;
    GDState state = std::move(init);

    auto log_now = [&](const GDState& s) {
        out.trace.push_back(record(s, inst));
        if (observer) observer(s, out.trace.back());
    };

    auto maybe_fire = [&]() {
        if (out.fire_iteration) return;
        if (!trigger_check(state, inst, accel_cfg)) return;
        RebalanceResult reb = rebalance_transform(state.F, state.G, accel_cfg.beta);
        state.F = std::move(reb.F);
        state.G = std::move(reb.G);
        out.fire_iteration = state.t;
        out.clamped = reb.clamped;
        out.smallest_d = reb.smallest_d;
    };

    try {
        maybe_fire();
        log_now(state);
        bool last_logged = true;
        while (state.t < gd_cfg.t_max) {
            if (gd_cfg.stop_loss && out.trace.back().t == state.t &&
                out.trace.back().loss_fro2 <= *gd_cfg.stop_loss)
                break;
            GDState next = asym_step(state, inst, gd_cfg.eta);
            if (last_logged)
                out.trace.back().drift_bound_ok =
                    imbalance_drift_check(state, next, gd_cfg.eta, inst);
            state = std::move(next);
            maybe_fire();
            last_logged = (state.t % gd_cfg.log_stride == 0) || state.t == gd_cfg.t_max ||
                          (out.fire_iteration && *out.fire_iteration == state.t);
            if (last_logged) {
                log_now(state);
                if (gd_cfg.stop_loss && out.trace.back().loss_fro2 <= *gd_cfg.stop_loss) break;
            }
        }
    } catch (const DivergenceError& e) {
        throw RunAborted(e.what(), std::move(out.trace), e.iteration());
    }
    return out;
}

}  // namespace lrgd
