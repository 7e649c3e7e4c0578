#ifndef LRGD_HARNESS_CSV_HPP
#define LRGD_HARNESS_CSV_HPP

#include <string>
#include <vector>

#include "lrgd/diagnostics.hpp"

namespace lrgd::harness {

/// Fixed CSV column order; absent optionals become empty cells, floats are
/// printed with 17 significant digits (lossless double round-trip).
extern const std::vector<std::string> kTraceCsvHeader;

std::string trace_to_csv(const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path);

std::vector<TraceRecord> csv_to_trace(const std::string& text);
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace lrgd::harness

#endif
