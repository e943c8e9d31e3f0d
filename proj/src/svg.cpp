#include "fairtopk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace fairtopk {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 140.0;  // room for the class legend
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 50.0;

const char* kPalette[12] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#8c6d31"};

std::string fmt(double value, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string fmt_g(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", value);
    return buf;
}

struct Scale {
    double lo, hi, out_lo, out_hi;
    double operator()(double v) const {
        if (hi <= lo) return 0.5 * (out_lo + out_hi);
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

void open_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << (kMarginLeft + (kWidth - kMarginRight)) / 2 << "\" y=\""
        << kHeight - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kMarginTop + (kHeight - kMarginBottom)) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (kMarginTop + (kHeight - kMarginBottom)) / 2
        << ")\">" << y_label << "</text>\n";
    // plot frame
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << kWidth - kMarginLeft - kMarginRight << "\" height=\""
        << kHeight - kMarginTop - kMarginBottom << "\" fill=\"none\" stroke=\"#444\"/>\n";
}

void axis_ticks(std::ostream& out, const Scale& x, const Scale& y) {
    const double y_base = kHeight - kMarginBottom;
    for (int t = 0; t <= 4; ++t) {
        const double fx = x.lo + (x.hi - x.lo) * t / 4.0;
        const double px = x(fx);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y_base) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(y_base + 4) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y_base + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt_g(fx) << "</text>\n";
        const double fy = y.lo + (y.hi - y.lo) * t / 4.0;
        const double py = y(fy);
        out << "<line x1=\"" << fmt(kMarginLeft - 4) << "\" y1=\"" << fmt(py) << "\" x2=\""
            << fmt(kMarginLeft) << "\" y2=\"" << fmt(py) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << fmt(kMarginLeft - 7) << "\" y=\"" << fmt(py + 3)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt_g(fy)
            << "</text>\n";
    }
}

}  // namespace

void write_tradeoff_svg(const SweepRun& run, std::ostream& out) {
    double x_hi = 0.0, y_hi = 0.0;
    for (const auto& p : run.results) {
        x_hi = std::max(x_hi, p.avg_utility_decrease);
        y_hi = std::max(y_hi, p.mean_discrepancy);
    }
    if (x_hi <= 0.0) x_hi = 1.0;
    if (y_hi <= 0.0) y_hi = 1.0;
    const Scale x{0.0, x_hi * 1.05, kMarginLeft, kWidth - kMarginRight};
    const Scale y{0.0, y_hi * 1.05, kHeight - kMarginBottom, kMarginTop};

    open_chart(out, "Trade-off at target rate p = " + fmt_g(run.rate),
               "average utility decrease", "mean discrepancy");
    axis_ticks(out, x, y);

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : run.results)
        out << fmt(x(p.avg_utility_decrease)) << "," << fmt(y(p.mean_discrepancy)) << " ";
    out << "\"/>\n";
    for (const auto& p : run.results) {
        out << "<circle cx=\"" << fmt(x(p.avg_utility_decrease)) << "\" cy=\""
            << fmt(y(p.mean_discrepancy)) << "\" r=\"3\" fill=\"#1f77b4\"><title>lambda="
            << fmt_g(p.lambda) << "</title></circle>\n";
    }
    out << "</svg>\n";
}

void write_classes_svg(const SweepRun& run, std::ostream& out) {
    const std::size_t points = run.results.size();
    const Scale x{0.0, static_cast<double>(points > 1 ? points - 1 : 1), kMarginLeft,
                  kWidth - kMarginRight};
    double y_hi = run.rate;
    for (const auto& p : run.results)
        for (double r : p.per_class_rate) y_hi = std::max(y_hi, r);
    const Scale y{0.0, y_hi * 1.05 + 1e-9, kHeight - kMarginBottom, kMarginTop};

    open_chart(out, "Per-class selection rate, p = " + fmt_g(run.rate),
               "sweep position (lambda increasing)", "class selection rate");
    axis_ticks(out, x, y);

    // target rate reference
    out << "<line x1=\"" << fmt(x(0.0)) << "\" y1=\"" << fmt(y(run.rate)) << "\" x2=\""
        << fmt(x(x.hi)) << "\" y2=\"" << fmt(y(run.rate))
        << "\" stroke=\"#999\" stroke-dasharray=\"5,4\"/>\n";

    for (std::size_t c = 0; c < run.class_labels.size(); ++c) {
        const char* color = kPalette[c % 12];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t t = 0; t < points; ++t)
            out << fmt(x(static_cast<double>(t))) << "," << fmt(y(run.results[t].per_class_rate[c]))
                << " ";
        out << "\"/>\n";
        const double ly = kMarginTop + 14.0 * static_cast<double>(c) + 8.0;
        out << "<line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << kWidth - kMarginRight + 28 << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kWidth - kMarginRight + 32 << "\" y=\"" << fmt(ly + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << run.class_labels[c]
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace fairtopk
