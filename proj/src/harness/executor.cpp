#include "lrgd/harness/executor.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "lrgd/harness/csv.hpp"
#include "lrgd/harness/svg.hpp"

namespace lrgd::harness {

namespace {

constexpr std::uint64_t kOperatorSeedTag = 9999;  // one operator per experiment
constexpr std::uint64_t kRipSeedTag = 777;

}  // namespace

MeasurementOperator build_operator(const ExperimentConfig& cfg) {
    if (cfg.m == 0) return MeasurementOperator::make_identity(cfg.n, cfg.n);
    return MeasurementOperator::make_gaussian(cfg.n, cfg.n, cfg.m,
                                              Seed{derive_seed(cfg.seed, kOperatorSeedTag)});
}

ProblemInstance build_instance(const ExperimentConfig& cfg, const ResolvedRun& run,
                               const MeasurementOperator& op) {
    GroundTruth truth = make_ground_truth(cfg.n, cfg.r, run.singulars);
    const Mode mode = run.mode == "symmetric" ? Mode::symmetric : Mode::asymmetric;
    return make_measurements(std::move(truth), op, run.k, mode);
}

GDState build_init(const ExperimentConfig& cfg, const ResolvedRun& run) {
    if (run.mode == "symmetric")
        return make_symmetric_state(init_symmetric(cfg.n, run.k, run.alpha, Seed{run.init_seed}));
    auto [F, G] = init_asymmetric_imbalanced(cfg.n, run.k, run.alpha, cfg.ratio, Seed{run.init_seed});
    return make_asymmetric_state(std::move(F), std::move(G));
}

ExperimentOutcome execute_experiment(const ExperimentConfig& cfg) {
    ExperimentOutcome outcome;
    outcome.cfg = cfg;
    MeasurementOperator op = build_operator(cfg);

    if (cfg.m > 0) {
        const std::size_t max_k = *std::max_element(cfg.k_values.begin(), cfg.k_values.end());
        const std::size_t probe = std::min(2 * max_k + 1, cfg.n);
        outcome.rip = estimate_rip_delta(op, probe, 50, Seed{derive_seed(cfg.seed, kRipSeedTag)});
    }

    GDConfig gd;
    gd.eta = cfg.eta;
    gd.t_max = cfg.t_max;
    gd.stop_loss = cfg.stop_loss;
    gd.log_stride = cfg.log_stride;

    for (const ResolvedRun& resolved : expand_runs(cfg)) {
        RunOutcome ro;
        ro.run = resolved;
        ProblemInstance inst = build_instance(cfg, resolved, op);
        GDState init = build_init(cfg, resolved);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            if (resolved.mode == "accel") {
                AccelConfig ac;
                if (cfg.t_fire) {
                    ac.trigger_mode = AccelConfig::TriggerMode::fixed_iteration;
                    ac.t_fire = *cfg.t_fire;
                } else {
                    ac.trigger_mode = AccelConfig::TriggerMode::threshold;
                    ac.gamma = *cfg.gamma;
                }
                ac.beta = cfg.beta > 0.0 ? cfg.beta : 0.5 * resolved.singulars.back();
                AccelRun ar = run_with_accel(inst, std::move(init), gd, ac);
                ro.trace = std::move(ar.trace);
                ro.fire_iteration = ar.fire_iteration;
                ro.clamped = ar.clamped;
                ro.smallest_d = ar.smallest_d;
            } else {
                ro.trace = run(inst, std::move(init), gd);
            }
        } catch (const RunAborted& e) {
            ro.trace = e.partial_trace;
            ro.diverged = true;
            ro.diverged_at = e.t_failed;
        }
        ro.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (!ro.diverged) {
            try {
                Series s = extract_series(ro.trace, cfg.fit_field);
                auto [ws, we] = default_fit_window(s);
                const long a = cfg.fit_t_start.value_or(ws);
                const long b = cfg.fit_t_end.value_or(we);
                ro.fit = cfg.fit_kind == "power" ? fit_power_rate(s, a, b)
                                                 : fit_linear_rate(s, a, b);
            } catch (const std::exception&) {
                // nonpositive or too-short tails leave the fit absent
            }
        }
        outcome.runs.push_back(std::move(ro));
    }
    return outcome;
}

void write_outputs(const ExperimentOutcome& outcome, const std::string& outdir) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    const std::string& name = outcome.cfg.name;

    nlohmann::json summary;
    summary["config"] = serialize_config(outcome.cfg);
    if (outcome.rip) {
        summary["rip_estimate"] = {{"delta_low", outcome.rip->delta_low},
                                   {"delta_high", outcome.rip->delta_high},
                                   {"trials", outcome.rip->trials},
                                   {"rank_probed", outcome.rip->rank_probed},
                                   {"note", "probe-based lower bound on the true RIP constant"}};
    }

    SvgAxes axes;
    axes.log_y = true;
    axes.loglog = outcome.cfg.fit_kind == "power";

    for (const RunOutcome& ro : outcome.runs) {
        const std::string stem = name.empty() ? ro.run.label : name + "-" + ro.run.label;
        write_trace_csv(ro.trace, (fs::path(outdir) / (stem + ".csv")).string());
        try {
            render_svg(ro.trace, {"loss_fro2"}, (fs::path(outdir) / (stem + ".svg")).string(),
                       axes, stem);
        } catch (const std::exception&) {
            // e.g. a diverged run whose loss hit zero length; CSV still exists
        }

        nlohmann::json jr;
        jr["label"] = ro.run.label;
        jr["mode"] = ro.run.mode;
        jr["k"] = ro.run.k;
        jr["alpha"] = ro.run.alpha;
        jr["init_seed"] = ro.run.init_seed;
        jr["diverged"] = ro.diverged;
        if (ro.diverged) jr["diverged_at"] = ro.diverged_at;
        if (!ro.trace.empty()) {
            jr["final_t"] = ro.trace.back().t;
            jr["final_loss_fro2"] = ro.trace.back().loss_fro2;
            jr["final_train_loss"] = ro.trace.back().train_loss;
        }
        if (ro.fit) {
            jr["fit"] = {{"kind", ro.fit->kind == RateFit::Kind::linear ? "linear" : "power"},
                         {"field", outcome.cfg.fit_field},
                         {"value", ro.fit->value},
                         {"r2", ro.fit->r2},
                         {"degenerate", ro.fit->degenerate},
                         {"t_start", ro.fit->t_start},
                         {"t_end", ro.fit->t_end},
                         {"samples", ro.fit->samples}};
        }
        if (ro.fire_iteration) {
            jr["fire_iteration"] = *ro.fire_iteration;
            jr["clamped_singulars"] = ro.clamped;
            jr["smallest_d_at_fire"] = ro.smallest_d;
        }
        jr["wall_seconds"] = ro.wall_seconds;
        summary["runs"].push_back(std::move(jr));
    }

    std::ofstream out((fs::path(outdir) / (name + "-summary.json")).string(), std::ios::binary);
    out << summary.dump(2) << "\n";
}

}  // namespace lrgd::harness
