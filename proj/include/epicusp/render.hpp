#pragma once

#include <span>
#include <string>
#include <vector>

#include "epicusp/curve.hpp"

namespace epicusp {

struct Marker {
    PlanePoint at;
    std::string label;
};

/// Canvas and data bounds for an SVG figure. Data coordinates map linearly
/// onto [0, width] x [0, height] with y pointing up.
struct PlotSpec {
    int width = 800;
    int height = 800;
    double x_min = -2.2;
    double x_max = 2.2;
    double y_min = -2.2;
    double y_max = 2.2;
    double stroke_width = 1.0;
    std::vector<Marker> markers;
    int samples = 2000;
    /// One stroke colour per series; empty means a blue-to-red ramp by index.
    std::vector<std::string> colors;
};

/// Pixel position of a data point under the plot's viewbox transform.
PlanePoint to_pixel(const PlotSpec& plot, PlanePoint data) noexcept;
PlanePoint from_pixel(const PlotSpec& plot, PlanePoint pixel) noexcept;

/// Blue-to-red ramp, "#rrggbb", linear in index / (count - 1).
std::string ramp_color(std::size_t index, std::size_t count);

/// One closed polyline per curve. The bounds grow symmetrically when a
/// sampled point would fall outside them. Throws EmptyInputError for no specs.
std::string render_curve(std::span<const CurveSpec> specs, PlotSpec plot = {});

/// gamma_{a,b}^s for `steps` evenly spaced s in [-1, 1].
std::string render_sweep(int a, int b, int steps, PlotSpec plot = {});

/// y'/x' against t in [0, 1]. The x bounds of `plot` are replaced by [0, 1];
/// the graph is split wherever the derivative is undefined or leaves the y
/// bounds, so each branch between poles is its own polyline.
std::string render_param_derivative(const TwoTermSpec& spec, PlotSpec plot = {});

/// Parameters t where y'/x' is undefined, against s in [-1, 1], with the
/// predicted cusp points drawn as bold markers.
std::string render_singularity_diagram(int a, int b, int s_grid);

enum class Component { X, Y };

/// One coordinate of gamma_{a,b}^s over [t_lo, t_hi] for each s. Three series
/// are drawn red, green, blue in order.
std::string render_component(int a, int b, std::span<const double> s_values, double t_lo, double t_hi,
                             Component component);

enum class SampleFormat { Csv, Json };

/// Columns t, x, y at t = j/n. CSV has a `t,x,y` header, CRLF line endings and
/// 17 significant digits; JSON embeds the curve so it can be parsed back.
std::string export_samples(const CurveSpec& spec, int n, SampleFormat format);

}  // namespace epicusp
