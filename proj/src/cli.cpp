#include "epicusp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "epicusp/acceptance.hpp"
#include "epicusp/curve_json.hpp"
#include "epicusp/errors.hpp"
#include "epicusp/geometry.hpp"
#include "epicusp/rational.hpp"
#include "epicusp/render.hpp"
#include "epicusp/singularity.hpp"
#include "epicusp/winding.hpp"

namespace epicusp::cli {

namespace {

using nlohmann::json;

// Bad flag values found after CLI11 parsing; reported like parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveArgs {
    int a = 1;
    int b = 3;
    std::string s_text = "0";
};

void add_pair(CLI::App* cmd, CurveArgs& args) {
    cmd->add_option("-a", args.a, "lower frequency (1 <= a < b)")->required();
    cmd->add_option("-b", args.b, "upper frequency")->required();
}

void add_curve(CLI::App* cmd, CurveArgs& args, bool required = true) {
    add_pair(cmd, args);
    auto* opt = cmd->add_option("-s", args.s_text, "weight parameter in [-1, 1], decimal or p/q");
    if (required) {
        opt->required();
    }
}

void check_pair(const CurveArgs& args) {
    if (args.a < 1 || args.b <= args.a) {
        throw UsageError("expected 1 <= a < b, got a=" + std::to_string(args.a) + " b=" + std::to_string(args.b));
    }
}

double parse_s(const std::string& text) {
    const auto s = parse_real_or_rational(text);
    if (!s) {
        throw UsageError("cannot parse s value '" + text + "'");
    }
    if (*s < -1.0 || *s > 1.0) {
        throw UsageError("s must lie in [-1, 1], got " + text);
    }
    return *s;
}

TwoTermSpec two_term(const CurveArgs& args) {
    check_pair(args);
    return TwoTermSpec(args.a, args.b, parse_s(args.s_text));
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto v = parse_real_or_rational(item);
        if (!v) {
            throw UsageError("cannot parse list item '" + item + "'");
        }
        values.push_back(*v);
    }
    if (values.empty()) {
        throw UsageError("empty list '" + text + "'");
    }
    return values;
}

void write_document(const std::string& path, const std::string& body, std::ostream& out) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    file << body;
    file.close();
    if (!file) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
    out << json{{"written", path}, {"bytes", body.size()}}.dump() << "\n";
}

json certificate_json(const CuspCertificate& c) {
    return {{"s", c.s}, {"t", c.t}, {"flip_dot", c.flip_dot}, {"proven", c.proven}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Winding numbers, cusps, symmetry and self-intersections of two-term exponential curves", "epicusp"};
    app.require_subcommand(1);

    // wind
    CurveArgs wind_args;
    std::string z0_text;
    bool wind_numeric = false;
    int wind_n = kDefaultWindingSamples;
    auto* wind = app.add_subcommand("wind", "winding number about a base point (default: origin)");
    add_curve(wind, wind_args);
    wind->add_option("--z0", z0_text, "base point as x,y");
    wind->add_flag("--numeric", wind_numeric, "use argument tracking instead of the closed form");
    wind->add_option("-n", wind_n, "grid size for argument tracking");

    // cusps
    CurveArgs cusp_args;
    bool predicted_only = false;
    int cusp_s_grid = kDefaultCuspGrid;
    int cusp_t_grid = kDefaultCuspGrid;
    auto* cusps = app.add_subcommand("cusps", "locate and certify cusp points");
    add_pair(cusps, cusp_args);
    cusps->add_flag("--predicted-only", predicted_only, "certify the predicted locus without searching");
    cusps->add_option("--s-grid", cusp_s_grid, "scan rows in s");
    cusps->add_option("--t-grid", cusp_t_grid, "scan columns in t");

    // symmetry
    CurveArgs sym_args;
    int sym_n = 10000;
    auto* symmetry = app.add_subcommand("symmetry", "check the dihedral symmetry D_{b-a}");
    add_curve(symmetry, sym_args);
    symmetry->add_option("-n", sym_n, "number of samples");

    // intersect
    CurveArgs int_args;
    int int_grid = kDefaultIntersectionGrid;
    std::string int_format = "json";
    auto* intersect = app.add_subcommand("intersect", "self-intersection points");
    add_curve(intersect, int_args);
    intersect->add_option("--t-grid", int_grid, "sampling grid");
    intersect->add_option("--format", int_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // plot
    CurveArgs plot_args;
    std::string plot_kind = "curve";
    std::string plot_format = "svg";
    std::string plot_out;
    std::string plot_freqs;
    std::string plot_curve_file;
    std::string plot_s_list = "-0.495,-0.5,-0.505";
    std::string plot_component = "x";
    double plot_t_lo = 0.22;
    double plot_t_hi = 0.28;
    int plot_samples = 2000;
    int plot_s_grid = 400;
    bool plot_mark_cusps = false;
    auto* plot = app.add_subcommand("plot", "write a figure (SVG) or curve samples (CSV/JSON)");
    plot->add_option("-a", plot_args.a, "lower frequency");
    plot->add_option("-b", plot_args.b, "upper frequency");
    plot->add_option("-s", plot_args.s_text, "weight parameter");
    plot->add_option("--kind", plot_kind, "curve, derivative, diagram or components")
        ->check(CLI::IsMember({"curve", "derivative", "diagram", "components"}));
    plot->add_option("--format", plot_format, "svg, csv or json")->check(CLI::IsMember({"svg", "csv", "json"}));
    plot->add_option("--out", plot_out, "output path")->required();
    plot->add_option("--freqs", plot_freqs, "unit-weight frequencies, e.g. 3,3,7");
    plot->add_option("--curve", plot_curve_file, "curve JSON file");
    plot->add_option("--s-list", plot_s_list, "s values for --kind components");
    plot->add_option("--component", plot_component, "x or y")->check(CLI::IsMember({"x", "y"}));
    plot->add_option("--t-lo", plot_t_lo, "window start for --kind components");
    plot->add_option("--t-hi", plot_t_hi, "window end for --kind components");
    plot->add_option("--samples", plot_samples, "samples per curve");
    plot->add_option("--s-grid", plot_s_grid, "s resolution for --kind diagram");
    plot->add_flag("--mark-cusps", plot_mark_cusps, "mark the predicted cusp parameters on the curve");

    // sweep
    CurveArgs sweep_args;
    int sweep_steps = 21;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "panel of gamma_{a,b}^s for s from -1 to 1");
    add_pair(sweep, sweep_args);
    sweep->add_option("--steps", sweep_steps, "number of s values");
    sweep->add_option("--out", sweep_out, "output path")->required();

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (wind->parsed()) {
            const TwoTermSpec spec = two_term(wind_args);
            std::optional<PlanePoint> z0;
            if (!z0_text.empty()) {
                const auto xy = parse_list(z0_text);
                if (xy.size() != 2) {
                    throw UsageError("--z0 expects x,y");
                }
                z0 = PlanePoint{xy[0], xy[1]};
            }
            if (wind_n < 64) {
                throw UsageError("-n must be >= 64");
            }
            const bool at_origin = !z0 || (z0->x == 0.0 && z0->y == 0.0);
            if (!wind_numeric && at_origin) {
                const int value = winding_closed_form(spec);
                out << json{{"value", value}, {"residual", 0.0}, {"samples", 0}}.dump() << "\n";
            } else {
                const WindingResult r = winding_numeric(spec.to_curve(), z0.value_or(PlanePoint{}), wind_n);
                out << json{{"value", r.value}, {"residual", r.residual}, {"samples", r.samples}}.dump() << "\n";
            }
        } else if (cusps->parsed()) {
            check_pair(cusp_args);
            if (predicted_only) {
                const CuspLocus locus = predicted_cusp_locus(cusp_args.a, cusp_args.b);
                const TwoTermSpec spec(cusp_args.a, cusp_args.b, locus.s_bar.to_double());
                for (const Rational& t : locus.t_values) {
                    if (auto cert = certify_cusp(spec, t.to_double())) {
                        out << certificate_json(*cert).dump() << "\n";
                    } else {
                        out << json{{"s", spec.s()}, {"t", t.to_double()}, {"flip_dot", nullptr}, {"proven", locus.proven}}
                                   .dump()
                            << "\n";
                    }
                }
            } else {
                if (cusp_s_grid < 64 || cusp_t_grid < 64) {
                    throw UsageError("--s-grid and --t-grid must be >= 64");
                }
                const CuspSearch found = find_cusps(cusp_args.a, cusp_args.b, cusp_s_grid, cusp_t_grid);
                for (const auto& c : found.certificates) {
                    out << certificate_json(c).dump() << "\n";
                }
                err << "candidates=" << found.candidates << " unconverged=" << found.unconverged
                    << " rejected=" << found.rejected << "\n";
            }
        } else if (symmetry->parsed()) {
            if (sym_n < 100) {
                throw UsageError("-n must be >= 100");
            }
            const SymmetryReport r = verify_symmetry(two_term(sym_args), sym_n);
            out << json{{"claimed_order", r.claimed_order},
                        {"rotation_deviation", r.rotation_deviation},
                        {"reflection_deviation", r.reflection_deviation},
                        {"coprime", r.coprime},
                        {"degenerate", r.degenerate},
                        {"verified", r.verified()}}
                       .dump()
                << "\n";
        } else if (intersect->parsed()) {
            if (int_grid < 256) {
                throw UsageError("--t-grid must be >= 256");
            }
            const IntersectionSearch found = self_intersections(two_term(int_args), int_grid);
            if (int_format == "csv") {
                out << "t1,t2,x,y,on_grid\r\n";
                out.precision(17);
                for (const auto& r : found.records) {
                    out << r.t1 << "," << r.t2 << "," << r.point.x << "," << r.point.y << ","
                        << (r.on_rational_grid ? "true" : "false") << "\r\n";
                }
            } else {
                for (const auto& r : found.records) {
                    json line{{"t1", r.t1}, {"t2", r.t2}, {"x", r.point.x}, {"y", r.point.y}, {"on_grid", r.on_rational_grid}};
                    if (r.grid_index_pair) {
                        line["j1"] = r.grid_index_pair->first;
                        line["j2"] = r.grid_index_pair->second;
                    }
                    out << line.dump() << "\n";
                }
            }
            err << "candidates=" << found.candidates << " dropped=" << found.dropped << "\n";
        } else if (plot->parsed()) {
            PlotSpec spec;
            spec.samples = std::max(plot_samples, 2);
            std::string body;
            if (plot_kind == "curve") {
                std::optional<CurveSpec> curve;
                if (!plot_curve_file.empty()) {
                    std::ifstream file(plot_curve_file);
                    if (!file) {
                        throw UsageError("cannot read curve file '" + plot_curve_file + "'");
                    }
                    std::stringstream text;
                    text << file.rdbuf();
                    curve = parse_curve_json(text.str());
                } else if (!plot_freqs.empty()) {
                    std::vector<int> freqs;
                    for (double f : parse_list(plot_freqs)) {
                        freqs.push_back(static_cast<int>(f));
                    }
                    curve = CurveSpec::from_frequencies(freqs);
                } else {
                    const TwoTermSpec tt = two_term(plot_args);
                    curve = tt.to_curve();
                    if (plot_mark_cusps) {
                        for (const Rational& t : predicted_cusp_locus(tt.a(), tt.b()).t_values) {
                            spec.markers.push_back({evaluate(*curve, t.to_double()), ""});
                        }
                    }
                }
                if (plot_format == "csv") {
                    body = export_samples(*curve, spec.samples, SampleFormat::Csv);
                } else if (plot_format == "json") {
                    body = export_samples(*curve, spec.samples, SampleFormat::Json);
                } else {
                    body = render_curve(std::span<const CurveSpec>(&*curve, 1), spec);
                }
            } else if (plot_kind == "derivative") {
                body = render_param_derivative(two_term(plot_args), spec);
            } else if (plot_kind == "diagram") {
                check_pair(plot_args);
                body = render_singularity_diagram(plot_args.a, plot_args.b, std::max(plot_s_grid, 2));
            } else {
                check_pair(plot_args);
                const auto s_values = parse_list(plot_s_list);
                for (double s : s_values) {
                    if (s < -1.0 || s > 1.0) {
                        throw UsageError("--s-list values must lie in [-1, 1]");
                    }
                }
                body = render_component(plot_args.a, plot_args.b, s_values, plot_t_lo, plot_t_hi,
                                        plot_component == "x" ? Component::X : Component::Y);
            }
            write_document(plot_out, body, out);
        } else if (sweep->parsed()) {
            check_pair(sweep_args);
            if (sweep_steps < 2) {
                throw UsageError("--steps must be >= 2");
            }
            write_document(sweep_out, render_sweep(sweep_args.a, sweep_args.b, sweep_steps), out);
        } else if (verify->parsed()) {
            const auto results = run_acceptance();
            int passed = 0;
            for (const auto& r : results) {
                passed += r.passed ? 1 : 0;
                out << json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}}.dump() << "\n";
            }
            const bool all = passed == static_cast<int>(results.size());
            out << json{{"passed", passed}, {"total", results.size()}, {"ok", all}}.dump() << "\n";
            return all ? kExitOk : kExitVerifyFailed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const AnalysisError& e) {
        out << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return kExitAnalysisError;
    } catch (const std::exception& e) {
        out << json{{"error", "Failure"}, {"message", e.what()}}.dump() << "\n";
        return kExitAnalysisError;
    }
    return kExitOk;
}

}  // namespace epicusp::cli
