#include "memkin/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "memkin/error.hpp"

namespace memkin {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path + "'");
        out << content;
        if (!out) throw Error("write failed for '" + path + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot write '" + path + "'");
    }
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string svg_line_plot(const std::vector<Series>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label, bool log_y) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto ty = [&](double y) { return log_y ? (y > 0 ? std::log10(y) : NAN) : y; };
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            double y = ty(s.y[i]);
            if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" +
                      num(H) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
           "</text>\n";
    out += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(W - ml - mr) + "\" height=\"" +
           num(H - mt - mb) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\" font-size=\"12\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(H / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           num(H / 2) + ")\">" + escape(log_y ? "log10 " + y_label : y_label) + "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(H - mb + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + format_double(std::round(xv * 1000) / 1000) +
               "</text>\n";
        out += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\" font-size=\"10\">" +
               format_double(std::round(yv * 1000) / 1000) + "</text>\n";
    }
    for (size_t s = 0; s < series.size(); ++s) {
        const auto& se = series[s];
        // thin long traces so the file stays small
        size_t step = std::max<size_t>(1, se.x.size() / 2000);
        std::string pts;
        for (size_t i = 0; i < se.x.size(); i += step) {
            double y = ty(se.y[i]);
            if (!std::isfinite(y)) continue;
            pts += num(px(se.x[i])) + "," + num(py(y)) + " ";
        }
        const char* color = kPalette[s % 5];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        out += "<text x=\"" + num(ml + 10) + "\" y=\"" + num(mt + 16 + 14.0 * s) + "\" font-size=\"11\" fill=\"" +
               color + "\">" + escape(se.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_heatmap(const std::vector<double>& values, int rows, int cols, const std::string& title) {
    const int cell = std::max(2, 480 / std::max(rows, cols));
    const int W = cols * cell, H = rows * cell + 30;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) + "\" height=\"" +
                      std::to_string(H) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(W / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(title) + "</text>\n";
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double v = std::clamp(values[static_cast<size_t>(r) * cols + c], 0.0, 1.0);
            int g = static_cast<int>(std::lround(255 * (1 - v)));
            out += "<rect x=\"" + std::to_string(c * cell) + "\" y=\"" + std::to_string(30 + r * cell) +
                   "\" width=\"" + std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"rgb(" +
                   std::to_string(g) + "," + std::to_string(g) + "," + std::to_string(g) + ")\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace memkin
