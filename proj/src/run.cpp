#include "lrgd/run.hpp"

#include <cmath>

namespace lrgd {

std::vector<TraceRecord> run(const ProblemInstance& inst, GDState init, const GDConfig& config,
                             const Observer& observer) {
    if (config.eta < 0.0) throw std::invalid_argument("run: eta must be nonnegative");
    if (config.t_max < 0) throw std::invalid_argument("run: t_max must be nonnegative");
    if (config.log_stride < 1) throw std::invalid_argument("run: log_stride must be >= 1");
    if ((init.mode == Mode::symmetric) != (inst.mode == Mode::symmetric))
        throw std::invalid_argument("run: init mode does not match instance mode");

    std::vector<TraceRecord> trace;
    GDState state = std::move(init);

    auto log_now = [&](const GDState& s) {
        trace.push_back(record(s, inst));
        if (!std::isfinite(trace.back().loss_fro2))
            throw DivergenceError(s.t, "run: reconstruction error overflowed at iteration " +
                                           std::to_string(s.t));
        if (observer) observer(s, trace.back());
    };

    bool last_logged = true;
    try {
        log_now(state);
        while (state.t < config.t_max) {
            if (config.stop_loss && trace.back().t == state.t &&
                trace.back().loss_fro2 <= *config.stop_loss)
                break;
            GDState next = gd_step(state, inst, config.eta);
            if (last_logged && state.mode == Mode::asymmetric)
                trace.back().drift_bound_ok = imbalance_drift_check(state, next, config.eta, inst);
            state = std::move(next);
            last_logged = (state.t % config.log_stride == 0) || state.t == config.t_max;
            if (last_logged) {
                log_now(state);
                if (config.stop_loss && trace.back().loss_fro2 <= *config.stop_loss) break;
            }
        }
    } catch (const DivergenceError& e) {
        throw RunAborted(e.what(), std::move(trace), e.iteration());
    }
    return trace;
}

}  // namespace lrgd
