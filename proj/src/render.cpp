#include "epicusp/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "epicusp/curve_json.hpp"
#include "epicusp/errors.hpp"
#include "epicusp/singularity.hpp"

namespace epicusp {

namespace {

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

// Pixel coordinates with fixed precision; "-0.000" is folded to "0.000".
std::string px(double value) {
    std::string s = fmt("%.3f", value);
    return s == "-0.000" ? "0.000" : s;
}

std::string num17(double value) { return value == 0.0 ? std::string("0") : fmt("%.17g", value); }

std::string svg_open(const PlotSpec& plot) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(plot.width) +
           "\" height=\"" + std::to_string(plot.height) + "\" viewBox=\"0 0 " + std::to_string(plot.width) + " " +
           std::to_string(plot.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

std::string axes(const PlotSpec& plot) {
    std::string out;
    if (plot.y_min <= 0.0 && plot.y_max >= 0.0) {
        const PlanePoint l = to_pixel(plot, {plot.x_min, 0.0});
        const PlanePoint r = to_pixel(plot, {plot.x_max, 0.0});
        out += "<line class=\"axis\" x1=\"" + px(l.x) + "\" y1=\"" + px(l.y) + "\" x2=\"" + px(r.x) + "\" y2=\"" +
               px(r.y) + "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    }
    if (plot.x_min <= 0.0 && plot.x_max >= 0.0) {
        const PlanePoint b = to_pixel(plot, {0.0, plot.y_min});
        const PlanePoint t = to_pixel(plot, {0.0, plot.y_max});
        out += "<line class=\"axis\" x1=\"" + px(b.x) + "\" y1=\"" + px(b.y) + "\" x2=\"" + px(t.x) + "\" y2=\"" +
               px(t.y) + "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    }
    return out;
}

std::string polyline(const PlotSpec& plot, const std::vector<PlanePoint>& data, const std::string& cls,
                     const std::string& color) {
    std::string out = "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                      fmt("%g", plot.stroke_width) + "\" points=\"";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const PlanePoint p = to_pixel(plot, data[i]);
        if (i > 0) {
            out += ' ';
        }
        out += px(p.x) + "," + px(p.y);
    }
    out += "\"/>\n";
    return out;
}

std::string markers(const PlotSpec& plot) {
    std::string out;
    for (const auto& m : plot.markers) {
        const PlanePoint p = to_pixel(plot, m.at);
        out += "<circle class=\"marker\" cx=\"" + px(p.x) + "\" cy=\"" + px(p.y) + "\" r=\"4\" fill=\"black\"/>\n";
        if (!m.label.empty()) {
            out += "<text x=\"" + px(p.x + 6.0) + "\" y=\"" + px(p.y - 6.0) + "\" font-size=\"12\">" + m.label +
                   "</text>\n";
        }
    }
    return out;
}

std::string series_color(const PlotSpec& plot, std::size_t index, std::size_t count) {
    if (index < plot.colors.size()) {
        return plot.colors[index];
    }
    return count == 1 ? std::string("#000000") : ramp_color(index, count);
}

}  // namespace

PlanePoint to_pixel(const PlotSpec& plot, PlanePoint data) noexcept {
    return {(data.x - plot.x_min) / (plot.x_max - plot.x_min) * plot.width,
            (plot.y_max - data.y) / (plot.y_max - plot.y_min) * plot.height};
}

PlanePoint from_pixel(const PlotSpec& plot, PlanePoint pixel) noexcept {
    return {plot.x_min + pixel.x / plot.width * (plot.x_max - plot.x_min),
            plot.y_max - pixel.y / plot.height * (plot.y_max - plot.y_min)};
}

std::string ramp_color(std::size_t index, std::size_t count) {
    const double f = count > 1 ? static_cast<double>(index) / static_cast<double>(count - 1) : 0.0;
    const auto channel = [f](int from, int to) { return static_cast<int>(std::lround(from + f * (to - from))); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(0x1f, 0xd6), channel(0x4e, 0x27), channel(0xb4, 0x28));
    return buf;
}

std::string render_curve(std::span<const CurveSpec> specs, PlotSpec plot) {
    if (specs.empty()) {
        throw EmptyInputError("render_curve needs at least one curve");
    }
    const int n = std::max(plot.samples, 2);
    std::vector<std::vector<PlanePoint>> series;
    double reach = 0.0;
    for (const auto& spec : specs) {
        series.push_back(sample(spec, n));
        for (const auto& p : series.back()) {
            reach = std::max({reach, std::abs(p.x), std::abs(p.y)});
        }
    }
    if (reach > std::min({-plot.x_min, plot.x_max, -plot.y_min, plot.y_max})) {
        const double bound = std::max({reach * 1.1, -plot.x_min, plot.x_max, -plot.y_min, plot.y_max});
        plot.x_min = plot.y_min = -bound;
        plot.x_max = plot.y_max = bound;
    }

    std::string out = svg_open(plot);
    out += axes(plot);
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto closed = series[i];
        closed.push_back(closed.front());
        out += polyline(plot, closed, "curve", series_color(plot, i, series.size()));
    }
    out += markers(plot);
    out += "</svg>\n";
    return out;
}

std::string render_sweep(int a, int b, int steps, PlotSpec plot) {
    if (steps < 2) {
        throw std::invalid_argument("render_sweep needs at least 2 steps");
    }
    std::vector<CurveSpec> specs;
    for (int k = 0; k < steps; ++k) {
        // Rounded to 12 places so the nominal values -1, -0.9, ... are hit exactly.
        double s = -1.0 + 2.0 * k / (steps - 1);
        s = std::nearbyint(s * 1e12) / 1e12;
        specs.push_back(TwoTermSpec(a, b, s).to_curve());
    }
    return render_curve(specs, std::move(plot));
}

std::string render_param_derivative(const TwoTermSpec& spec, PlotSpec plot) {
    plot.x_min = 0.0;
    plot.x_max = 1.0;
    const CurveSpec curve = spec.to_curve();
    const int n = std::max(plot.samples, 2);

    std::string out = svg_open(plot);
    out += axes(plot);
    std::vector<PlanePoint> branch;
    auto flush = [&] {
        if (branch.size() >= 2) {
            out += polyline(plot, branch, "branch", "#000000");
        }
        branch.clear();
    };
    for (int k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / n;
        const auto slope = parametric_derivative(curve, t);
        if (!slope || *slope > plot.y_max || *slope < plot.y_min) {
            flush();
            continue;
        }
        branch.push_back({t, *slope});
    }
    flush();
    out += markers(plot);
    out += "</svg>\n";
    return out;
}

std::string render_singularity_diagram(int a, int b, int s_grid) {
    if (s_grid < 2) {
        throw std::invalid_argument("render_singularity_diagram needs s_grid >= 2");
    }
    PlotSpec plot;
    plot.x_min = -1.0;
    plot.x_max = 1.0;
    plot.y_min = 0.0;
    plot.y_max = 1.0;

    std::string out = svg_open(plot);
    out += axes(plot);
    const double dash = static_cast<double>(plot.width) / (s_grid - 1);
    std::string path;
    for (int j = 0; j < s_grid; ++j) {
        const double s = -1.0 + 2.0 * j / (s_grid - 1);
        for (double t : undefined_derivative_set(a, b, s)) {
            const PlanePoint p = to_pixel(plot, {s, t});
            path += "M" + px(p.x - 0.5 * dash) + " " + px(p.y) + "h" + px(dash);
        }
    }
    out += "<path class=\"undefined-set\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"" + path + "\"/>\n";

    const CuspLocus locus = predicted_cusp_locus(a, b);
    const double s_bar = locus.s_bar.to_double();
    for (const Rational& t : locus.t_values) {
        const PlanePoint p = to_pixel(plot, {s_bar, t.to_double()});
        out += "<circle class=\"cusp-marker\" data-s=\"" + num17(s_bar) + "\" data-t=\"" + num17(t.to_double()) +
               "\" cx=\"" + px(p.x) + "\" cy=\"" + px(p.y) + "\" r=\"7\" fill=\"black\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string render_component(int a, int b, std::span<const double> s_values, double t_lo, double t_hi,
                             Component component) {
    if (s_values.empty()) {
        throw EmptyInputError("render_component needs at least one s value");
    }
    if (!(t_hi > t_lo)) {
        throw std::invalid_argument("render_component needs t_hi > t_lo");
    }
    PlotSpec plot;
    plot.x_min = t_lo;
    plot.x_max = t_hi;
    constexpr int kPoints = 1001;

    std::vector<std::vector<PlanePoint>> series;
    double lo = 0.0;
    double hi = 0.0;
    for (double s : s_values) {
        const CurveSpec curve = TwoTermSpec(a, b, s).to_curve();
        std::vector<PlanePoint> graph;
        for (int k = 0; k < kPoints; ++k) {
            const double t = t_lo + (t_hi - t_lo) * k / (kPoints - 1);
            const PlanePoint p = evaluate(curve, t);
            const double v = component == Component::X ? p.x : p.y;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            graph.push_back({t, v});
        }
        series.push_back(std::move(graph));
    }
    const double margin = 0.05 * std::max(hi - lo, 1e-12);
    plot.y_min = lo - margin;
    plot.y_max = hi + margin;
    if (series.size() == 3) {
        plot.colors = {"#ff0000", "#00a000", "#0000ff"};
    }

    std::string out = svg_open(plot);
    out += axes(plot);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += polyline(plot, series[i], "component", series_color(plot, i, series.size()));
    }
    out += "</svg>\n";
    return out;
}

std::string export_samples(const CurveSpec& spec, int n, SampleFormat format) {
    if (n < 2) {
        throw std::invalid_argument("export_samples needs n >= 2");
    }
    const std::vector<PlanePoint> pts = sample(spec, n);
    if (format == SampleFormat::Csv) {
        std::string out = "t,x,y\r\n";
        for (int j = 0; j < n; ++j) {
            const PlanePoint& p = pts[static_cast<std::size_t>(j)];
            out += num17(static_cast<double>(j) / n) + "," + num17(p.x) + "," + num17(p.y) + "\r\n";
        }
        return out;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (int j = 0; j < n; ++j) {
        const PlanePoint& p = pts[static_cast<std::size_t>(j)];
        rows.push_back({{"t", static_cast<double>(j) / n}, {"x", p.x}, {"y", p.y}});
    }
    nlohmann::json doc = {{"curve", curve_to_json(spec)}, {"samples", std::move(rows)}};
    return doc.dump() + "\n";
}

}  // namespace epicusp
