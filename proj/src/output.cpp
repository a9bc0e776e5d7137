#include "scmn/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "scmn/errors.hpp"

namespace scmn {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_g12(const std::optional<double>& v) {
    return v ? format_g12(*v) : std::string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open output file: " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series) {
    constexpr double W = 720.0, H = 480.0;
    constexpr double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double pw = W - ml - mr;
    const double ph = H - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin < xmax)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymin < ymax)) {
        ymin = 0.0;
        ymax = 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
          "viewBox=\"0 0 720 480\">\n";
    os << "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    os << "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
          "font-size=\"15\">" << title << "</text>\n";
    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
       << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
       << mt + ph << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5.0;
        const double yv = ymin + (ymax - ymin) * k / 5.0;
        os << "<line x1=\"" << px(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(xv)
           << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 20
           << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
           << format_g12(std::round(xv * 1e4) / 1e4) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
           << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
           << format_g12(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10
       << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
       << x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
          "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label
       << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kColors[si % 6];
        std::ostringstream pts;
        bool open = false;
        const auto flush = [&] {
            if (open) {
                os << "<polyline fill=\"none\" stroke=\"" << color
                   << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
            }
            pts.str("");
            open = false;
        };
        for (const auto& [x, y] : series[si].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
                flush();
                continue;
            }
            pts << format_g12(px(x)) << "," << format_g12(py(y)) << " ";
            open = true;
        }
        flush();
        os << "<text x=\"" << ml + pw - 8 << "\" y=\"" << mt + 16 + 16 * si
           << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" "
              "fill=\"" << color << "\">" << series[si].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace scmn
