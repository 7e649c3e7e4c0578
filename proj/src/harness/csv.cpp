#include "lrgd/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrgd::harness {

const std::vector<std::string> kTraceCsvHeader = {
    "t",         "loss_fro2", "loss_spec", "train_loss", "potential_At", "theta_max",
    "theta_excluded", "delta_min", "delta_max", "M_t",   "P_t",          "S_t",
    "norm_K",    "norm_J",    "norm_UmV",  "k_perp",     "drift_bound_ok"};

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : ""; }
std::string cell(const std::optional<long>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }

}  // namespace

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    for (std::size_t i = 0; i < kTraceCsvHeader.size(); ++i) {
        if (i) out << ",";
        out << kTraceCsvHeader[i];
    }
    out << "\n";
    for (const TraceRecord& r : trace) {
        out << r.t << "," << fmt(r.loss_fro2) << "," << fmt(r.loss_spec) << ","
            << fmt(r.train_loss) << "," << cell(r.potential_At) << "," << cell(r.theta_max) << ","
            << cell(r.theta_excluded) << "," << cell(r.delta_min) << "," << cell(r.delta_max)
            << "," << cell(r.M_t) << "," << cell(r.P_t) << "," << cell(r.S_t) << ","
            << cell(r.norm_K) << "," << cell(r.norm_J) << "," << cell(r.norm_UmV) << ","
            << cell(r.k_perp) << "," << cell(r.drift_bound_ok) << "\n";
    }
    return out.str();
}

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << trace_to_csv(trace);
    if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

std::vector<TraceRecord> csv_to_trace(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv_to_trace: empty input");

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    };

    const auto header = split(line);
    if (header != kTraceCsvHeader)
        throw std::invalid_argument("csv_to_trace: header does not match the trace schema");

    std::vector<TraceRecord> trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != kTraceCsvHeader.size())
            throw std::runtime_error("csv_to_trace: row has " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(kTraceCsvHeader.size()));
        auto opt_d = [&](std::size_t i) -> std::optional<double> {
            if (cells[i].empty()) return std::nullopt;
            return std::stod(cells[i]);
        };
        TraceRecord r;
        r.t = std::stol(cells[0]);
        r.loss_fro2 = std::stod(cells[1]);
        r.loss_spec = std::stod(cells[2]);
        r.train_loss = std::stod(cells[3]);
        r.potential_At = opt_d(4);
        r.theta_max = opt_d(5);
        if (!cells[6].empty()) r.theta_excluded = std::stol(cells[6]);
        r.delta_min = opt_d(7);
        r.delta_max = opt_d(8);
        r.M_t = opt_d(9);
        r.P_t = opt_d(10);
        r.S_t = opt_d(11);
        r.norm_K = opt_d(12);
        r.norm_J = opt_d(13);
        r.norm_UmV = opt_d(14);
        r.k_perp = opt_d(15);
        if (!cells[16].empty()) r.drift_bound_ok = (cells[16] == "1");
        trace.push_back(std::move(r));
    }
    return trace;
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return csv_to_trace(ss.str());
}

}  // namespace lrgd::harness
