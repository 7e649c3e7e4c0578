#ifndef LRGD_RUN_HPP
#define LRGD_RUN_HPP

#include <functional>

#include "lrgd/diagnostics.hpp"

namespace lrgd {

using Observer = std::function<void(const GDState&, const TraceRecord&)>;

/// Divergence mid-run; carries whatever was logged before the abort.
class RunAborted : public std::runtime_error {
public:
    RunAborted(std::string what, std::vector<TraceRecord> partial, long t)
        : std::runtime_error(std::move(what)), partial_trace(std::move(partial)), t_failed(t) {}

    std::vector<TraceRecord> partial_trace;
    long t_failed;
};

/// Runs GD from `init` until t_max or stop_loss (on the reconstruction error
/// ||FG^T - Sigma||_F^2), recording diagnostics every log_stride iterations
/// plus the first and last. drift_bound_ok is filled on every logged record
/// that has a successor step.
std::vector<TraceRecord> run(const ProblemInstance& inst, GDState init, const GDConfig& config,
                             const Observer& observer = {});

}  // namespace lrgd

#endif
