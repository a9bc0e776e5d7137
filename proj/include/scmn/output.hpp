#ifndef SCMN_OUTPUT_HPP
#define SCMN_OUTPUT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scmn {

// Locale-independent float formatting with 12 significant digits; the one
// formatter every emitted file goes through so identical runs stay
// byte-identical.
std::string format_g12(double v);

// Optional fields print as empty cells.
std::string format_g12(const std::optional<double>& v);

// Writes lines to path, creating/truncating; io_error on failure.
void write_text_file(const std::string& path, const std::string& content);

// Minimal polyline plot: one or more series drawn over labelled axes.
// Points with non-finite y split the polyline.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series);

}  // namespace scmn

#endif
