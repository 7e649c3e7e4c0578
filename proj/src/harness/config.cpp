#include "lrgd/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lrgd::harness {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw std::invalid_argument("config: field '" + key + "': not a number: '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long l = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return l;
    } catch (...) {
        throw std::invalid_argument("config: field '" + key + "': not an integer: '" + v + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += f(v[i]);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "name") cfg.name = val;
        else if (key == "mode") cfg.mode = val;
        else if (key == "compare_modes") cfg.compare_modes = (val == "true" || val == "1");
        else if (key == "n") cfg.n = static_cast<std::size_t>(to_long(key, val));
        else if (key == "r") cfg.r = static_cast<std::size_t>(to_long(key, val));
        else if (key == "k") {
            cfg.k_values.clear();
            for (auto& s : split_list(val)) cfg.k_values.push_back(static_cast<std::size_t>(to_long(key, s)));
        } else if (key == "m") cfg.m = static_cast<std::size_t>(to_long(key, val));
        else if (key == "eta") cfg.eta = to_double(key, val);
        else if (key == "alpha") {
            cfg.alphas.clear();
            for (auto& s : split_list(val)) cfg.alphas.push_back(to_double(key, s));
        } else if (key == "ratio") cfg.ratio = to_double(key, val);
        else if (key == "singulars") {
            cfg.singulars.clear();
            for (auto& s : split_list(val)) cfg.singulars.push_back(to_double(key, s));
        } else if (key == "sigma_r") {
            cfg.sigma_r_values.clear();
            for (auto& s : split_list(val)) cfg.sigma_r_values.push_back(to_double(key, s));
        } else if (key == "t_max") cfg.t_max = to_long(key, val);
        else if (key == "log_stride") cfg.log_stride = to_long(key, val);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "stop_loss") cfg.stop_loss = to_double(key, val);
        else if (key == "gamma") cfg.gamma = to_double(key, val);
        else if (key == "t_fire") cfg.t_fire = to_long(key, val);
        else if (key == "beta") cfg.beta = to_double(key, val);
        else if (key == "fit_field") cfg.fit_field = val;
        else if (key == "fit_kind") cfg.fit_kind = val;
        else if (key == "fit_t_start") cfg.fit_t_start = to_long(key, val);
        else if (key == "fit_t_end") cfg.fit_t_end = to_long(key, val);
        else throw std::invalid_argument("config: unknown field '" + key + "'");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "name = " << cfg.name << "\n";
    out << "mode = " << cfg.mode << "\n";
    if (cfg.compare_modes) out << "compare_modes = true\n";
    out << "n = " << cfg.n << "\n";
    out << "r = " << cfg.r << "\n";
    out << "k = " << join(cfg.k_values, [](std::size_t k) { return std::to_string(k); }) << "\n";
    out << "m = " << cfg.m << "\n";
    out << "eta = " << fmt(cfg.eta) << "\n";
    out << "alpha = " << join(cfg.alphas, fmt) << "\n";
    out << "ratio = " << fmt(cfg.ratio) << "\n";
    if (!cfg.singulars.empty()) out << "singulars = " << join(cfg.singulars, fmt) << "\n";
    if (!cfg.sigma_r_values.empty()) out << "sigma_r = " << join(cfg.sigma_r_values, fmt) << "\n";
    out << "t_max = " << cfg.t_max << "\n";
    out << "log_stride = " << cfg.log_stride << "\n";
    out << "seed = " << cfg.seed << "\n";
    if (cfg.stop_loss) out << "stop_loss = " << fmt(*cfg.stop_loss) << "\n";
    if (cfg.gamma) out << "gamma = " << fmt(*cfg.gamma) << "\n";
    if (cfg.t_fire) out << "t_fire = " << *cfg.t_fire << "\n";
    if (cfg.beta != 0.0) out << "beta = " << fmt(cfg.beta) << "\n";
    out << "fit_field = " << cfg.fit_field << "\n";
    out << "fit_kind = " << cfg.fit_kind << "\n";
    if (cfg.fit_t_start) out << "fit_t_start = " << *cfg.fit_t_start << "\n";
    if (cfg.fit_t_end) out << "fit_t_end = " << *cfg.fit_t_end << "\n";
    return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (cfg.mode != "symmetric" && cfg.mode != "asymmetric" && cfg.mode != "accel")
        fail("mode must be symmetric, asymmetric or accel (got '" + cfg.mode + "')");
    if (cfg.n < 1) fail("n must be >= 1");
    if (cfg.r < 1 || cfg.r > cfg.n) fail("r must be in [1, n]");
    if (cfg.k_values.empty()) fail("k must name at least one value");
    for (std::size_t k : cfg.k_values)
        if (k < 1 || k > cfg.n) fail("k = " + std::to_string(k) + " must be in [1, n]");
    if (cfg.eta <= 0.0) fail("eta must be positive");
    if (cfg.alphas.empty()) fail("alpha must name at least one value");
    for (double a : cfg.alphas)
        if (a <= 0.0) fail("alpha values must be positive");
    if (cfg.ratio <= 0.0 || cfg.ratio > 1.0) fail("ratio must be in (0, 1]");
    if (!cfg.singulars.empty() && cfg.singulars.size() != cfg.r)
        fail("singulars must have exactly r entries");
    if (!cfg.singulars.empty() && !cfg.sigma_r_values.empty())
        fail("singulars and sigma_r are mutually exclusive");
    if (cfg.t_max < 0) fail("t_max must be nonnegative");
    if (cfg.log_stride < 1) fail("log_stride must be >= 1");
    if (cfg.mode == "accel" && !cfg.gamma && !cfg.t_fire)
        fail("accel mode needs gamma or t_fire");
    if (cfg.gamma && *cfg.gamma <= 0.0) fail("gamma must be positive");
    if (cfg.t_fire && *cfg.t_fire < 0) fail("t_fire must be nonnegative");
    if (cfg.beta < 0.0) fail("beta must be nonnegative");
    if (cfg.fit_kind != "linear" && cfg.fit_kind != "power")
        fail("fit_kind must be linear or power");
}

std::vector<ResolvedRun> expand_runs(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::vector<std::string> modes;
    if (cfg.compare_modes)
        modes = {"symmetric", "asymmetric"};
    else
        modes = {cfg.mode};

    std::vector<std::vector<double>> singular_sets;
    if (!cfg.sigma_r_values.empty()) {
        for (double sr : cfg.sigma_r_values) {
            std::vector<double> s(cfg.r, 1.0);
            s.back() = sr;
            singular_sets.push_back(std::move(s));
        }
    } else if (!cfg.singulars.empty()) {
        singular_sets.push_back(cfg.singulars);
    } else {
        singular_sets.push_back(std::vector<double>(cfg.r, 1.0));
    }

    std::vector<ResolvedRun> runs;
    std::uint64_t index = 0;
    for (const std::string& mode : modes) {
        for (std::size_t k : cfg.k_values) {
            for (const auto& sing : singular_sets) {
                for (double alpha : cfg.alphas) {
                    ResolvedRun run;
                    run.mode = mode;
                    run.k = k;
                    run.alpha = alpha;
                    run.singulars = sing;
                    run.init_seed = cfg.seed + index;
                    std::ostringstream label;
                    if (modes.size() > 1) label << mode << "-";
                    label << "k" << k;
                    if (singular_sets.size() > 1) label << "-sr" << sing.back();
                    label << "-a" << alpha;
                    run.label = label.str();
                    runs.push_back(std::move(run));
                    ++index;
                }
            }
        }
    }
    return runs;
}

}  // namespace lrgd::harness
