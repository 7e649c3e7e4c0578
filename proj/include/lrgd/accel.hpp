#ifndef LRGD_ACCEL_HPP
#define LRGD_ACCEL_HPP

#include "lrgd/run.hpp"

namespace lrgd {

/// One-shot rebalancing configuration: fire either when the preconditioned
/// residual norm ||A*A(FG^T - Sigma)|| drops below gamma, or at a fixed
/// iteration. beta is the factor scale enforced on F after the transform.
struct AccelConfig {
    enum class TriggerMode { threshold, fixed_iteration };
    TriggerMode trigger_mode = TriggerMode::threshold;
    double gamma = 0.0;
    long t_fire = 0;
    double beta = 0.0;
};

bool trigger_check(const GDState& state, const ProblemInstance& inst, const AccelConfig& cfg);

struct RebalanceResult {
    DenseMatrix F;
    DenseMatrix G;
    std::size_t clamped = 0;       // singular values raised to the clamp floor
    double smallest_d = 0.0;       // smallest original singular value of F
};

/// Right-multiplies F by R = Q^T diag(beta/d_i) and G by R^{-T}, with
/// F = P diag(d) Q its thin SVD. Preserves FG^T exactly and makes
/// F'^T F' = beta^2 I. Singular values below 1e-8 * d_1 are clamped before
/// inversion (reported, not fatal).
RebalanceResult rebalance_transform(const DenseMatrix& F, const DenseMatrix& G, double beta);

struct AccelRun {
    std::vector<TraceRecord> trace;
    std::optional<long> fire_iteration;
    std::size_t clamped = 0;
    double smallest_d = 0.0;
};

/// GD with the transform applied exactly once, at the first trigger.
AccelRun run_with_accel(const ProblemInstance& inst, GDState init, const GDConfig& gd_cfg,
                        const AccelConfig& accel_cfg, const Observer& observer = {});

}  // namespace lrgd

#endif
