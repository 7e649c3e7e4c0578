#include "lrgd/harness/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrgd::harness {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

std::string render_svg_chart(const std::vector<SvgSeries>& series, const SvgAxes& axes,
                             const std::string& title) {
    const bool log_y = axes.log_y || axes.loglog;
    const bool log_x = axes.loglog;

    // transformed point lists
    struct TPoint {
        double x, y;
    };
    std::vector<std::vector<TPoint>> tseries;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const SvgSeries& s : series) {
        std::vector<TPoint> pts;
        for (auto& [t, v] : s.points) {
            if (log_x && t < 1) continue;  // t = 0 has no log abscissa
            if (log_y && v <= 0.0)
                throw std::invalid_argument("render_svg: nonpositive value under log axis at t = " +
                                         std::to_string(t) + ", series '" + s.label + "'");
            const double x = log_x ? std::log10(static_cast<double>(t)) : static_cast<double>(t);
            const double y = log_y ? std::log10(v) : v;
            pts.push_back({x, y});
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        tseries.push_back(std::move(pts));
    }
    if (xmin > xmax) throw std::invalid_argument("render_svg: no plottable points");
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double W = 860, H = 520, L = 70, R = 180, T = 40, B = 50;
    const double pw = W - L - R, ph = H - T - B;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return T + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!title.empty())
        out << "<text x=\"" << num(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // frame
    out << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks: 5 per axis, evenly spaced in transformed coordinates
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double vx = log_x ? std::pow(10.0, fx) : fx;
        const double vy = log_y ? std::pow(10.0, fy) : fy;
        out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(T + ph) << "\" x2=\""
            << num(px(fx)) << "\" y2=\"" << num(T + ph + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(T + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(vx) << "</text>\n"
            << "<line x1=\"" << num(L - 5) << "\" y1=\"" << num(py(fy)) << "\" x2=\"" << num(L)
            << "\" y2=\"" << num(py(fy)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(L - 8) << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(vy) << "</text>\n";
    }

    // curves (single points become markers)
    for (std::size_t s = 0; s < tseries.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const auto& pts = tseries[s];
        if (pts.size() == 1) {
            out << "<circle cx=\"" << num(px(pts[0].x)) << "\" cy=\"" << num(py(pts[0].y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else if (!pts.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i) out << " ";
                out << num(px(pts[i].x)) << "," << num(py(pts[i].y));
            }
            out << "\"/>\n";
        }
        // legend entry
        const double ly = T + 14 + 18 * static_cast<double>(s);
        out << "<line x1=\"" << num(L + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(L + pw + 36) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(L + pw + 42) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void render_svg(const std::vector<TraceRecord>& trace, const std::vector<std::string>& fields,
                const std::string& path, const SvgAxes& axes, const std::string& title) {
    std::vector<SvgSeries> series;
    for (const std::string& f : fields) series.push_back({f, lrgd::extract_series(trace, f)});
    write_svg(render_svg_chart(series, axes, title), path);
}

void write_svg(const std::string& svg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg: cannot open " + path);
    out << svg;
    if (!out) throw std::runtime_error("write_svg: write failed for " + path);
}

}  // namespace lrgd::harness
