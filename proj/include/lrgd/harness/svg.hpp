#ifndef LRGD_HARNESS_SVG_HPP
#define LRGD_HARNESS_SVG_HPP

#include <string>
#include <vector>

#include "lrgd/diagnostics.hpp"

namespace lrgd::harness {

struct SvgAxes {
    bool log_y = true;
    bool loglog = false;  // implies log_y; x axis becomes log t (t >= 1 only)
};

/// A named curve: one polyline in the figure.
struct SvgSeries {
    std::string label;
    Series points;
};

/// Self-contained deterministic SVG 1.1 line chart. Throws if a log axis is
/// requested and a point is nonpositive (x points at t < 1 are skipped under
/// loglog since t = 0 has no log abscissa).
std::string render_svg_chart(const std::vector<SvgSeries>& series, const SvgAxes& axes,
                             const std::string& title);

/// Renders the named TraceRecord fields of one trace.
void render_svg(const std::vector<TraceRecord>& trace, const std::vector<std::string>& fields,
                const std::string& path, const SvgAxes& axes, const std::string& title = "");

void write_svg(const std::string& svg, const std::string& path);

}  // namespace lrgd::harness

#endif
