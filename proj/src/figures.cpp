#include "ozs/figures.hpp"

#include "ozs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ozs {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMargin = 50;

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Scale {
    double lo, hi;
    double px0, px1;
    double operator()(double v) const {
        double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
        return px0 + t * (px1 - px0);
    }
};

void svg_header(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
}

void svg_axes(std::ostream& out) {
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
}

} // namespace

void write_series_figure(const Series& series, const std::filesystem::path& dir) {
    const std::size_t n = std::min<std::size_t>(series.size(), 500);

    auto csv = open_out(dir / "fig5_series.csv");
    csv << "date,o3\n";
    for (std::size_t i = 0; i < n; ++i)
        csv << format_date(series.dates[i]) << "," << fmt(series.o3[i]) << "\n";

    double lo = series.o3[0], hi = series.o3[0];
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, series.o3[i]);
        hi = std::max(hi, series.o3[i]);
    }
    Scale sx{0.0, double(n - 1), double(kMargin), double(kWidth - kMargin)};
    Scale sy{lo, hi, double(kHeight - kMargin), double(kMargin)};

    auto svg = open_out(dir / "fig5_series.svg");
    svg_header(svg, "Ozone level, first " + std::to_string(n) + " days");
    svg_axes(svg);
    svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < n; ++i)
        svg << fmt(sx(double(i))) << "," << fmt(sy(series.o3[i])) << " ";
    svg << "\"/>\n</svg>\n";
}

void write_comparison_figure(const EvalReport& report, const std::filesystem::path& dir) {
    auto csv = open_out(dir / "fig6_comparison.csv");
    csv << "model,split,cor\n";
    struct Bar { std::string label; double cor; };
    std::vector<Bar> bars;
    for (const auto& m : report.models)
        for (const char* split : {"train", "validation", "test"}) {
            auto it = m.splits.find(split);
            if (it == m.splits.end()) continue;
            csv << m.name << "," << split << ","
                << (it->second.cor ? fmt(*it->second.cor) : "") << "\n";
            if (it->second.cor) bars.push_back({m.name + std::string(":") + split, *it->second.cor});
        }

    auto svg = open_out(dir / "fig6_comparison.svg");
    svg_header(svg, "Correlation by model and split");
    svg_axes(svg);
    if (!bars.empty()) {
        double bw = double(kWidth - 2 * kMargin) / double(bars.size());
        Scale sy{0.0, 1.0, double(kHeight - kMargin), double(kMargin)};
        const char* colors[] = {"steelblue", "darkorange", "seagreen"};
        for (std::size_t i = 0; i < bars.size(); ++i) {
            double x = kMargin + bw * double(i) + bw * 0.1;
            double y = sy(std::max(bars[i].cor, 0.0));
            svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
                << fmt(bw * 0.8) << "\" height=\"" << fmt(double(kHeight - kMargin) - y)
                << "\" fill=\"" << colors[(i / 3) % 3] << "\"/>\n"
                << "<text x=\"" << fmt(x + bw * 0.4) << "\" y=\"" << kHeight - kMargin + 16
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
                << bars[i].label << "</text>\n";
        }
    }
    svg << "</svg>\n";
}

void write_scatter_figure(const ModelEval& eval, const std::string& stem,
                          const std::filesystem::path& dir) {
    auto csv = open_out(dir / (stem + ".csv"));
    csv << "split,actual,predicted\n";
    double lo = 0.0, hi = 1.0;
    bool first = true;
    for (const auto& [label, se] : eval.splits)
        for (std::size_t i = 0; i < se.count; ++i) {
            csv << label << "," << fmt(se.actual[i]) << "," << fmt(se.predicted[i]) << "\n";
            double a = se.actual[i], p = se.predicted[i];
            if (first) { lo = std::min(a, p); hi = std::max(a, p); first = false; }
            lo = std::min({lo, a, p});
            hi = std::max({hi, a, p});
        }

    Scale sx{lo, hi, double(kMargin), double(kWidth - kMargin)};
    Scale sy{lo, hi, double(kHeight - kMargin), double(kMargin)};
    auto svg = open_out(dir / (stem + ".svg"));
    svg_header(svg, eval.name + " predicted vs observed");
    svg_axes(svg);
    svg << "<line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
        << fmt(sx(hi)) << "\" y2=\"" << fmt(sy(hi))
        << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
    const char* colors[] = {"steelblue", "darkorange", "seagreen"};
    int ci = 0;
    for (const auto& [label, se] : eval.splits) {
        for (std::size_t i = 0; i < se.count; ++i)
            svg << "<circle cx=\"" << fmt(sx(se.actual[i])) << "\" cy=\""
                << fmt(sy(se.predicted[i])) << "\" r=\"1.5\" fill=\"" << colors[ci % 3]
                << "\" fill-opacity=\"0.5\"/>\n";
        ++ci;
    }
    svg << "</svg>\n";
}

void write_figures(const Series& series, const EvalReport& report,
                   const std::filesystem::path& dir) {
    write_series_figure(series, dir);
    write_comparison_figure(report, dir);
    for (const auto& m : report.models) {
        if (!m.error.empty()) continue;
        if (m.name == "bel") write_scatter_figure(m, "fig7_bel_scatter", dir);
        if (m.name == "mlp") write_scatter_figure(m, "fig8_mlp_scatter", dir);
    }
}

} // namespace ozs
