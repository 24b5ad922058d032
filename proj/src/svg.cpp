#include "qwalk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double width = 640, height = 480;
constexpr double margin_left = 70, margin_right = 20, margin_top = 36,
                 margin_bottom = 54;

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double place(double v, double a, double b) const {
        double x = log ? std::log10(v) : v;
        double l = log ? std::log10(lo) : lo;
        double h = log ? std::log10(hi) : hi;
        if (h == l) h = l + 1;
        return a + (x - l) / (h - l) * (b - a);
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> ticks(const Axis& ax) {
    std::vector<double> t;
    if (ax.log) {
        const int e0 = static_cast<int>(std::ceil(std::log10(ax.lo) - 1e-9));
        const int e1 = static_cast<int>(std::floor(std::log10(ax.hi) + 1e-9));
        for (int e = e0; e <= e1; ++e) t.push_back(std::pow(10.0, e));
        if (t.empty()) t = {ax.lo, ax.hi};
        return t;
    }
    const double span = ax.hi - ax.lo;
    if (span <= 0) return {ax.lo};
    double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double stepsize = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            stepsize = mag * m;
            break;
        }
    const double first = std::ceil(ax.lo / stepsize) * stepsize;
    for (double v = first; v <= ax.hi + 1e-12 * span; v += stepsize) t.push_back(v);
    return t;
}

std::string tick_label(double v, bool log) {
    std::ostringstream s;
    if (log) {
        const double e = std::log10(v);
        const long le = std::lround(e);
        if (std::abs(e - le) < 1e-9) {
            s << "1e" << le;
            return s.str();
        }
    }
    s.precision(4);
    s << v;
    return s.str();
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const PlotSeries& s : plot.series)
        for (const auto& [x, y] : s.points) {
            if (plot.log_x && x <= 0) continue;
            if (plot.log_y && y <= 0) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) throw std::invalid_argument("render_svg: nothing to plot");
    if (xmin == xmax) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymin == ymax) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    if (!plot.log_y) {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    const Axis ax{xmin, xmax, plot.log_x};
    const Axis ay{ymin, ymax, plot.log_y};
    const double x0 = margin_left, x1 = width - margin_right;
    const double y0 = height - margin_bottom, y1 = margin_top;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";

    // frame and grid
    svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
        << "\" height=\"" << num(y0 - y1)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    for (double v : ticks(ax)) {
        const double px = ax.place(v, x0, x1);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(y1)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << tick_label(v, ax.log) << "</text>\n";
    }
    for (double v : ticks(ay)) {
        const double py = ay.place(v, y0, y1);
        svg << "<line x1=\"" << num(x0) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x1)
            << "\" y2=\"" << num(py)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
            << tick_label(v, ay.log) << "</text>\n";
    }

    for (const PlotSeries& s : plot.series) {
        if (s.line) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\"";
            if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
            svg << " points=\"";
            for (const auto& [x, y] : s.points) {
                if ((plot.log_x && x <= 0) || (plot.log_y && y <= 0)) continue;
                svg << num(ax.place(x, x0, x1)) << ',' << num(ay.place(y, y0, y1)) << ' ';
            }
            svg << "\"/>\n";
        } else {
            for (const auto& [x, y] : s.points) {
                if ((plot.log_x && x <= 0) || (plot.log_y && y <= 0)) continue;
                svg << "<circle cx=\"" << num(ax.place(x, x0, x1)) << "\" cy=\""
                    << num(ay.place(y, y0, y1)) << "\" r=\"2.5\" fill=\"" << s.color
                    << "\"/>\n";
            }
        }
    }

    // legend, top right inside the frame
    double ly = y1 + 16;
    for (const PlotSeries& s : plot.series) {
        if (s.label.empty()) continue;
        svg << "<line x1=\"" << num(x1 - 150) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(x1 - 126) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        svg << "<text x=\"" << num(x1 - 120) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
            << "</text>\n";
        ly += 16;
    }

    svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(margin_top - 12)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
        << escape(plot.title) << "</text>\n";
    svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(height - 12)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << escape(plot.x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << num((y0 + y1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 "
        << num((y0 + y1) / 2) << ")\">" << escape(plot.y_label) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qwalk
