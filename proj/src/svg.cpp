#include "grassmatch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "grassmatch/errors.hpp"

namespace grassmatch {

double metric_value(const MetricsRecord& rec, const std::string& metric) {
    if (metric == "delta_L") return rec.delta_L;
    if (metric == "delta_Y") return rec.delta_Y;
    if (metric == "delta_X") return rec.delta_X;
    if (metric == "delta_H") {
        return rec.delta_H ? *rec.delta_H
                           : std::numeric_limits<double>::quiet_NaN();
    }
    if (metric == "d_sigma") return rec.d_sigma;
    if (metric == "d_lambda") return rec.d_lambda;
    throw EmptyInput("unknown metric '" + metric + "'");
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << body;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string heat_color(double v) {
    // white -> crimson over [0, cap].
    const double t = std::clamp(v / kSvgDisplayCap, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255.0 + t * (178.0 - 255.0)));
    const int g = static_cast<int>(std::lround(255.0 + t * (24.0 - 255.0)));
    const int b = static_cast<int>(std::lround(255.0 + t * (43.0 - 255.0)));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

void emit_svg_bars(const std::vector<MetricsRecord>& records,
                   std::span<const double> sigmas,
                   std::span<const double> lambdas, const std::string& metric,
                   const std::string& path) {
    if (records.empty()) throw EmptyInput("emit_svg_bars: no records");
    const std::size_t ns = sigmas.size();
    const std::size_t nl = lambdas.size();
    if (records.size() != ns * nl) {
        throw SizeMismatch("emit_svg_bars: grid shape disagrees with records");
    }

    const double bar_h = 10.0;
    const double group_gap = 14.0;
    const double left = 90.0;
    const double top = 40.0;
    const double plot_w = 420.0;
    const double group_h = static_cast<double>(nl) * bar_h + group_gap;
    const double height = top + static_cast<double>(ns) * group_h + 40.0;
    const double width = left + plot_w + 40.0;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << " " << fmt(height) << "\">\n";
    s << "<text x=\"" << fmt(left) << "\" y=\"20\" font-size=\"14\">" << metric
      << " by sigma (groups) and lambda (bars)</text>\n";
    // x axis line and cap tick
    const double axis_y = height - 24.0;
    s << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(axis_y) << "\" x2=\""
      << fmt(left + plot_w) << "\" y2=\"" << fmt(axis_y)
      << "\" stroke=\"black\"/>\n";
    for (const double tick : {0.0, 0.5, 1.0, kSvgDisplayCap}) {
        const double x = left + plot_w * tick / kSvgDisplayCap;
        s << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(axis_y) << "\" x2=\""
          << fmt(x) << "\" y2=\"" << fmt(axis_y + 4.0)
          << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fmt(x - 8.0) << "\" y=\"" << fmt(axis_y + 16.0)
          << "\" font-size=\"10\">" << fmt(tick) << "</text>\n";
    }

    for (std::size_t si = 0; si < ns; ++si) {
        const double gy = top + static_cast<double>(si) * group_h;
        s << "<text x=\"8\" y=\"" << fmt(gy + group_h / 2.0)
          << "\" font-size=\"11\">sigma " << fmt(sigmas[si]) << "</text>\n";
        for (std::size_t li = 0; li < nl; ++li) {
            const MetricsRecord& rec = records[si * nl + li];
            const double v = metric_value(rec, metric);
            const double y = gy + static_cast<double>(li) * bar_h;
            if (std::isnan(v)) {
                s << "<text x=\"" << fmt(left + 2.0) << "\" y=\""
                  << fmt(y + bar_h - 2.0)
                  << "\" font-size=\"9\" fill=\"gray\">nan (lambda "
                  << fmt(lambdas[li]) << ")</text>\n";
                continue;
            }
            const bool overflow = v > kSvgDisplayCap;
            const double shown = std::min(v, kSvgDisplayCap);
            const double w = plot_w * shown / kSvgDisplayCap;
            s << "<rect class=\"bar\" x=\"" << fmt(left) << "\" y=\"" << fmt(y)
              << "\" width=\"" << fmt(std::max(w, 0.5)) << "\" height=\""
              << fmt(bar_h - 2.0) << "\" fill=\"" << heat_color(shown)
              << "\" stroke=\"#555\" stroke-width=\"0.4\"><title>sigma "
              << fmt(sigmas[si]) << " lambda " << fmt(lambdas[li]) << " "
              << metric << " " << fmt(v) << "</title></rect>\n";
            if (overflow) {
                const double mx = left + plot_w + 2.0;
                s << "<path class=\"overflow\" d=\"M " << fmt(mx) << " "
                  << fmt(y) << " l 6 " << fmt((bar_h - 2.0) / 2.0) << " l -6 "
                  << fmt((bar_h - 2.0) / 2.0) << " z\" fill=\"black\"/>\n";
            }
        }
    }
    s << "</svg>\n";
    write_file(path, s.str());
}

void emit_svg_heatmap_pair(const std::vector<MetricsRecord>& best,
                           const std::vector<MetricsRecord>& weighted,
                           std::span<const double> sigmas,
                           std::span<const std::size_t> trial_counts,
                           const std::string& metric, const std::string& path) {
    if (best.empty() || weighted.empty()) {
        throw EmptyInput("emit_svg_heatmap_pair: no records");
    }
    const std::size_t ns = sigmas.size();
    const std::size_t nt = trial_counts.size();
    if (best.size() != ns * nt || weighted.size() != ns * nt) {
        throw SizeMismatch("emit_svg_heatmap_pair: grid shape disagrees");
    }

    const double cell_w = 44.0;
    const double cell_h = 26.0;
    const double left = 70.0;
    const double top = 48.0;
    const double panel_w = static_cast<double>(nt) * cell_w;
    const double panel_gap = 50.0;
    const double width = left + 2.0 * panel_w + panel_gap + 30.0;
    const double height = top + static_cast<double>(ns) * cell_h + 50.0;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << " " << fmt(height) << "\">\n";
    const char* titles[2] = {"best match", "weighted sum"};
    const std::vector<MetricsRecord>* grids[2] = {&best, &weighted};
    for (int panel = 0; panel < 2; ++panel) {
        const double px = left + panel * (panel_w + panel_gap);
        s << "<text x=\"" << fmt(px) << "\" y=\"20\" font-size=\"13\">" << metric
          << ", " << titles[panel] << "</text>\n";
        for (std::size_t ti = 0; ti < nt; ++ti) {
            s << "<text x=\"" << fmt(px + static_cast<double>(ti) * cell_w + 4.0)
              << "\" y=\"" << fmt(top - 6.0) << "\" font-size=\"10\">N="
              << trial_counts[ti] << "</text>\n";
        }
        for (std::size_t si = 0; si < ns; ++si) {
            const double y = top + static_cast<double>(si) * cell_h;
            if (panel == 0) {
                s << "<text x=\"8\" y=\"" << fmt(y + cell_h - 8.0)
                  << "\" font-size=\"10\">s=" << fmt(sigmas[si]) << "</text>\n";
            }
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const MetricsRecord& rec = (*grids[panel])[si * nt + ti];
                const double v = metric_value(rec, metric);
                const double x = px + static_cast<double>(ti) * cell_w;
                const bool missing = std::isnan(v);
                const bool overflow = !missing && v > kSvgDisplayCap;
                const std::string fill =
                    missing ? "#dddddd" : heat_color(std::min(v, kSvgDisplayCap));
                s << "<rect class=\"cell\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
                  << "\" width=\"" << fmt(cell_w - 2.0) << "\" height=\""
                  << fmt(cell_h - 2.0) << "\" fill=\"" << fill
                  << "\" stroke=\"#777\" stroke-width=\"0.4\"><title>sigma "
                  << fmt(sigmas[si]) << " N " << trial_counts[ti] << " "
                  << metric << " " << fmt(v) << "</title></rect>\n";
                s << "<text x=\"" << fmt(x + 3.0) << "\" y=\""
                  << fmt(y + cell_h - 9.0) << "\" font-size=\"9\">"
                  << (missing ? std::string("nan") : fmt(v))
                  << (overflow ? "!" : "") << "</text>\n";
            }
        }
    }
    s << "</svg>\n";
    write_file(path, s.str());
}

} // namespace grassmatch
