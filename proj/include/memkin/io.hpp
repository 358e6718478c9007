#pragma once

#include <string>
#include <vector>

namespace memkin {

// Shortest round-trip decimal form; stable across runs and thread counts.
std::string format_double(double x);

// Writes text atomically enough for our purposes: temp file then rename.
void write_text_file(const std::string& path, const std::string& content);

struct Series {
    std::string label;
    std::vector<double> x, y;
};

// Minimal line plot. log_y plots log10(y) for positive y.
std::string svg_line_plot(const std::vector<Series>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label, bool log_y);

// Row-major grid of values in [0, 1] rendered as grey cells.
std::string svg_heatmap(const std::vector<double>& values, int rows, int cols, const std::string& title);

}  // namespace memkin
