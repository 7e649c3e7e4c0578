#ifndef LRGD_HARNESS_EXECUTOR_HPP
#define LRGD_HARNESS_EXECUTOR_HPP

#include "lrgd/accel.hpp"
#include "lrgd/harness/config.hpp"
#include "lrgd/harness/presets.hpp"
#include "lrgd/run.hpp"

namespace lrgd::harness {

struct RunOutcome {
    ResolvedRun run;
    std::vector<TraceRecord> trace;
    bool diverged = false;
    long diverged_at = -1;
    std::optional<RateFit> fit;
    std::optional<long> fire_iteration;
    std::size_t clamped = 0;
    double smallest_d = 0.0;
    double wall_seconds = 0.0;
};

struct ExperimentOutcome {
    ExperimentConfig cfg;
    std::optional<RipEstimate> rip;
    std::vector<RunOutcome> runs;
};

/// Builds the shared measurement operator and the per-run problem instance.
MeasurementOperator build_operator(const ExperimentConfig& cfg);
ProblemInstance build_instance(const ExperimentConfig& cfg, const ResolvedRun& run,
                               const MeasurementOperator& op);
GDState build_init(const ExperimentConfig& cfg, const ResolvedRun& run);

ExperimentOutcome execute_experiment(const ExperimentConfig& cfg);

/// Writes <name>-<label>.csv / .svg per run plus <name>-summary.json.
void write_outputs(const ExperimentOutcome& outcome, const std::string& outdir);

}  // namespace lrgd::harness

#endif
