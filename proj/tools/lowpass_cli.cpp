// Command-line front end: kernel tables, series/sample filtering, the three
// boundary-value examples with divergence diagnostics, and a built-in
// numeric self-check. All data files are deterministic for fixed flags.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numeric-contract
// violation in --self-check mode.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowpass/convergence.hpp"
#include "lowpass/filter.hpp"
#include "lowpass/fourier.hpp"
#include "lowpass/io.hpp"
#include "lowpass/kernels.hpp"
#include "lowpass/pde.hpp"
#include "lowpass/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lowpass;

namespace {

constexpr double pi = std::numbers::pi;

struct CommonOpts {
    double epsilon = 0.5;
    int order = 1;
    std::size_t kmax = 4096;
    std::size_t modes = 2048;
    std::size_t scan_modes = 8192;
    std::size_t grid = 1001;
    std::string input;
    std::string output = ".";
    std::string format = "csv";
};

std::string path_join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_rows(const std::string& path, const std::string& format, const char* coord_name,
                const std::vector<double>& coords, const std::vector<double>& values) {
    std::ostringstream os;
    if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < coords.size(); ++i)
            rows.push_back({coords[i], values[i]});
        json j{{"coord", coord_name}, {"rows", rows}};
        os << j.dump(2) << '\n';
    } else {
        write_profile_csv(os, coord_name, coords, values);
    }
    write_text_file(path, os.str());
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json config_echo(const CommonOpts& o, const std::string& subcommand) {
    return json{{"subcommand", subcommand}, {"epsilon", o.epsilon},   {"order", o.order},
                {"kmax", o.kmax},           {"modes", o.modes},       {"scan_modes", o.scan_modes},
                {"grid", o.grid},           {"input", o.input},       {"output", o.output},
                {"format", o.format},       {"version", lowpass::version}};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

// uniform grid with the filtered-boundary ramp edges spliced in, so scans
// always sample the distinguished angles/positions exactly
std::vector<double> scan_grid(const ModalSolution& s, ScanCurve curve, double lo, double hi,
                              std::size_t n, double curve_parameter = 0.0) {
    std::vector<double> g = uniform_grid(lo, hi, n);
    for (double p : boundary_feature_points(s, curve, curve_parameter))
        if (p > lo && p < hi) g.push_back(p);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

json scan_summary(const std::vector<ScanPoint>& scan) {
    std::size_t flagged = 0;
    json points = json::array();
    for (const auto& p : scan)
        if (p.flagged) {
            ++flagged;
            points.push_back(p.coord);
        }
    const double fraction = scan.empty() ? 0.0 : double(flagged) / double(scan.size());
    return json{{"flagged_points", points},
                {"flagged_fraction", fraction},
                {"verdict", fraction >= 0.25 ? "divergent" : "convergent"}};
}

// ---------------------------------------------------------------------------

int run_kernels(const CommonOpts& o, int order_lo, int order_hi) {
    if (!(o.epsilon > 0) || o.epsilon > pi)
        throw std::invalid_argument("kernels: range must satisfy 0 < epsilon <= pi");
    if (order_lo < 1 || order_hi < order_lo)
        throw std::invalid_argument("kernels: bad order range");
    if (o.grid < 2) throw std::invalid_argument("kernels: grid must have at least 2 points");
    fs::create_directories(o.output);

    json report{{"config", config_echo(o, "kernels")}, {"per_order", json::array()}};
    const auto grid = uniform_grid(-o.epsilon, o.epsilon, o.grid);
    for (int n = order_lo; n <= order_hi; ++n) {
        const auto kern = order_n_kernel(n, o.epsilon);
        const auto series = kernel_series(n, o.epsilon, o.kmax);
        std::vector<double> closed(grid.size()), fourier(grid.size());
        double max_disc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            closed[i] = kern.value_at(grid[i]);
            fourier[i] = evaluate(series, grid[i]);
            double dist = 1e300;
            for (std::size_t b = 0; b < kern.breakpoint_count(); ++b)
                dist = std::min(dist, std::abs(grid[i] - kern.breakpoint(b)));
            if (dist > 0.05) max_disc = std::max(max_disc, std::abs(closed[i] - fourier[i]));
        }
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "N%d.%s", n, o.format == "json" ? "json" : "csv");
        write_rows(path_join(o.output, std::string("kernel_closed_") + suffix), o.format, "u",
                   grid, closed);
        write_rows(path_join(o.output, std::string("kernel_fourier_") + suffix), o.format, "u",
                   grid, fourier);
        report["per_order"].push_back({{"order", n},
                                       {"max_discrepancy_away_from_breakpoints", max_disc},
                                       {"breakpoint_exclusion", 0.05}});
    }
    write_json_file(path_join(o.output, "kernels_report.json"), report);
    return 0;
}

int run_filter_series(const CommonOpts& o) {
    if (o.input.empty()) throw std::invalid_argument("filter-series: --input is required");
    std::ifstream is(o.input);
    if (!is) throw std::runtime_error("cannot open input: " + o.input);
    const FourierSeries in = read_series_csv(is, o.input);
    const FilterSpec spec{o.order, o.epsilon};
    const FourierSeries out = filter_series(in, spec);

    std::ostringstream os;
    write_series_csv(os, out);
    write_text_file(o.output, os.str());
    json sidecar{{"filter", {{"order", spec.order}, {"range", spec.range}}},
                 {"k_max", out.k_max()},
                 {"input", o.input},
                 {"version", lowpass::version}};
    write_json_file(o.output + ".meta.json", sidecar);
    return 0;
}

int run_filter_samples(const CommonOpts& o, const std::string& extension) {
    if (o.input.empty()) throw std::invalid_argument("filter-samples: --input is required");
    Extension ext;
    if (extension == "periodic")
        ext = Extension::Periodic;
    else if (extension == "zero")
        ext = Extension::ZeroExtend;
    else
        throw std::invalid_argument("filter-samples: extension must be periodic or zero");
    std::ifstream is(o.input);
    if (!is) throw std::runtime_error("cannot open input: " + o.input);
    const SampledFunction in = read_samples_csv(is, ext, o.input);
    const FilterSpec spec{o.order, o.epsilon};
    const SampledFunction out = filter_samples(in, spec);

    std::ostringstream os;
    write_samples_csv(os, out);
    write_text_file(o.output, os.str());
    json sidecar{{"filter", {{"order", spec.order}, {"range", spec.range}}},
                 {"samples", out.size()},
                 {"interval", {out.lo, out.hi}},
                 {"extension", extension},
                 {"boundary_margin", out.boundary_margin},
                 {"input", o.input},
                 {"version", lowpass::version}};
    write_json_file(o.output + ".meta.json", sidecar);
    return 0;
}

int run_string(const CommonOpts& o, double hgt, double len, double nu, double time) {
    fs::create_directories(o.output);
    auto unfiltered = make_solution(Problem::PluckedString,
                                    {{"h", hgt}, {"L", len}, {"nu", nu}}, 0.0, o.scan_modes);
    auto filtered = make_solution(Problem::PluckedString, {{"h", hgt}, {"L", len}, {"nu", nu}},
                                  o.epsilon, o.scan_modes);
    const auto xs = uniform_grid(0.0, len, o.grid);

    json manifest{{"config", config_echo(o, "string")},
                  {"parameters", {{"h", hgt}, {"L", len}, {"nu", nu}}},
                  {"time", time}};

    // field profiles at the requested time, plus the release profile pair
    struct Row {
        Field field;
        const char* name;
    };
    for (const Row r : {Row{Field::Position, "position"}, Row{Field::Velocity, "velocity"},
                        Row{Field::Acceleration, "acceleration"}}) {
        for (bool filt : {false, true}) {
            const auto& sol = filt ? filtered : unfiltered;
            std::vector<double> vals(xs.size());
            bool divergent = false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const auto v = evaluate_field(sol, {r.field, xs[i], time}, o.modes, true);
                vals[i] = v.value;
                divergent = divergent || v.divergent_series;
            }
            const std::string name = std::string("field_") + r.name +
                                     (filt ? "_filtered." : "_unfiltered.") +
                                     (o.format == "json" ? "json" : "csv");
            write_rows(path_join(o.output, name), o.format, "x", xs, vals);
            manifest[std::string(r.name) + (filt ? "_filtered" : "_unfiltered")] =
                json{{"divergent_series", divergent}};
        }
    }
    for (bool filt : {false, true}) {
        const auto& sol = filt ? filtered : unfiltered;
        std::vector<double> vals(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            vals[i] = evaluate_field(sol, {Field::Position, xs[i], 0.0}, o.modes).value;
        const std::string name = std::string("position_t0_") +
                                 (filt ? "filtered." : "unfiltered.") +
                                 (o.format == "json" ? "json" : "csv");
        write_rows(path_join(o.output, name), o.format, "x", xs, vals);
    }

    // Cauchy diagnostics for the acceleration along the string at the given time
    for (bool filt : {false, true}) {
        const auto& sol = filt ? filtered : unfiltered;
        const auto grid = scan_grid(sol, ScanCurve::StringAtTime, 0.0, len, o.grid, time);
        const auto scan = divergence_scan(sol, Field::Acceleration, ScanCurve::StringAtTime,
                                          grid, o.scan_modes, time);
        std::ostringstream os;
        write_scan_csv(os, scan);
        const std::string name =
            std::string("scan_acceleration_") + (filt ? "filtered.csv" : "unfiltered.csv");
        write_text_file(path_join(o.output, name), os.str());
        manifest[std::string("scan_acceleration_") + (filt ? "filtered" : "unfiltered")] =
            scan_summary(scan);
    }
    write_json_file(path_join(o.output, "manifest.json"), manifest);
    return 0;
}

int run_box(const CommonOpts& o, double v0, double len, double hgt) {
    fs::create_directories(o.output);
    auto unfiltered = make_solution(Problem::BoxPotential, {{"V0", v0}, {"L", len}, {"h", hgt}},
                                    0.0, o.scan_modes);
    auto filtered = make_solution(Problem::BoxPotential, {{"V0", v0}, {"L", len}, {"h", hgt}},
                                  o.epsilon, o.scan_modes);
    const auto xs = uniform_grid(0.0, len, o.grid);

    json manifest{{"config", config_echo(o, "box")},
                  {"parameters", {{"V0", v0}, {"L", len}, {"h", hgt}}}};

    struct Row {
        Field field;
        const char* name;
    };
    for (const Row r :
         {Row{Field::Potential, "potential"}, Row{Field::Ex, "E_x"}, Row{Field::Ey, "E_y"}}) {
        for (bool filt : {false, true}) {
            const auto& sol = filt ? filtered : unfiltered;
            std::vector<double> vals(xs.size());
            bool divergent = false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const auto v = evaluate_field(sol, {r.field, xs[i], hgt}, o.modes, true);
                vals[i] = v.value;
                divergent = divergent || v.divergent_series;
            }
            const std::string name = std::string("top_") + r.name +
                                     (filt ? "_filtered." : "_unfiltered.") +
                                     (o.format == "json" ? "json" : "csv");
            write_rows(path_join(o.output, name), o.format, "x", xs, vals);
            manifest[std::string(r.name) + (filt ? "_filtered" : "_unfiltered")] =
                json{{"divergent_series", divergent}};
        }
    }
    for (bool filt : {false, true}) {
        const auto& sol = filt ? filtered : unfiltered;
        const auto grid = scan_grid(sol, ScanCurve::TopSurface, 0.0, len, o.grid);
        const auto scan =
            divergence_scan(sol, Field::Ey, ScanCurve::TopSurface, grid, o.scan_modes);
        std::ostringstream os;
        write_scan_csv(os, scan);
        write_text_file(path_join(o.output, std::string("scan_E_y_") +
                                                (filt ? "filtered.csv" : "unfiltered.csv")),
                        os.str());
        manifest[std::string("scan_E_y_") + (filt ? "filtered" : "unfiltered")] =
            scan_summary(scan);
    }
    write_json_file(path_join(o.output, "manifest.json"), manifest);
    return 0;
}

int run_cylinder(const CommonOpts& o, double u0, double r0, double cmk) {
    fs::create_directories(o.output);
    auto unfiltered = make_solution(Problem::CylinderHeat,
                                    {{"u0", u0}, {"r0", r0}, {"cmu_kappa", cmk}}, 0.0,
                                    o.scan_modes);
    auto filtered = make_solution(Problem::CylinderHeat,
                                  {{"u0", u0}, {"r0", r0}, {"cmu_kappa", cmk}}, o.epsilon,
                                  o.scan_modes);
    const auto thetas = uniform_grid(-pi, pi, o.grid);

    json manifest{{"config", config_echo(o, "cylinder")},
                  {"parameters", {{"u0", u0}, {"r0", r0}, {"cmu_kappa", cmk}}}};

    struct Row {
        Field field;
        const char* name;
    };
    for (const Row r : {Row{Field::Temperature, "temperature"}, Row{Field::FluxR, "flux_r"},
                        Row{Field::FluxTheta, "flux_theta"}}) {
        for (bool filt : {false, true}) {
            const auto& sol = filt ? filtered : unfiltered;
            std::vector<double> vals(thetas.size());
            bool divergent = false;
            for (std::size_t i = 0; i < thetas.size(); ++i) {
                const auto v = evaluate_field(sol, {r.field, r0, thetas[i]}, o.modes, true);
                vals[i] = v.value;
                divergent = divergent || v.divergent_series;
            }
            const std::string name = std::string("surface_") + r.name +
                                     (filt ? "_filtered." : "_unfiltered.") +
                                     (o.format == "json" ? "json" : "csv");
            write_rows(path_join(o.output, name), o.format, "theta", thetas, vals);
            manifest[std::string(r.name) + (filt ? "_filtered" : "_unfiltered")] =
                json{{"divergent_series", divergent}};
        }
    }
    for (bool filt : {false, true}) {
        const auto& sol = filt ? filtered : unfiltered;
        const auto grid = scan_grid(sol, ScanCurve::CylinderSurface, -pi, pi, o.grid);
        const auto scan =
            divergence_scan(sol, Field::FluxR, ScanCurve::CylinderSurface, grid, o.scan_modes);
        std::ostringstream os;
        write_scan_csv(os, scan);
        write_text_file(path_join(o.output, std::string("scan_flux_r_") +
                                                (filt ? "filtered.csv" : "unfiltered.csv")),
                        os.str());
        manifest[std::string("scan_flux_r_") + (filt ? "filtered" : "unfiltered")] =
            scan_summary(scan);
    }
    write_json_file(path_join(o.output, "manifest.json"), manifest);
    return 0;
}

int run_diagnose(const CommonOpts& o) {
    if (o.input.empty()) throw std::invalid_argument("diagnose: --input is required");
    std::ifstream is(o.input);
    if (!is) throw std::runtime_error("cannot open input: " + o.input);
    const FourierSeries s = read_series_csv(is, o.input);
    const ConvergenceReport rep = classify_convergence(s);
    json j = rep;
    j["k_max"] = s.k_max();
    j["input"] = o.input;
    j["version"] = lowpass::version;
    write_json_file(o.output == "." ? "diagnosis.json" : o.output, j);
    return 0;
}

// built-in oracle comparisons; exits 3 when a numeric contract is broken
int run_self_check() {
    int bad = 0;
    auto check = [&](const char* name, bool ok, double measured, double tol) {
        std::printf("self-check %-38s %s (measured %.3g, tol %.3g)\n", name,
                    ok ? "[ok]" : "[FAIL]", measured, tol);
        if (!ok) ++bad;
    };

    // piecewise closed forms vs truncated Fourier series
    {
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const auto kern = order_n_kernel(n, 0.5);
            const auto series = kernel_series(n, 0.5, 4096);
            for (int i = 0; i <= 400; ++i) {
                const double u = -0.5 + i * (1.0 / 400);
                double dist = 1e300;
                for (std::size_t b = 0; b < kern.breakpoint_count(); ++b)
                    dist = std::min(dist, std::abs(u - kern.breakpoint(b)));
                if (dist <= 0.08) continue;
                worst = std::max(worst, std::abs(evaluate(series, u) - kern.value_at(u)));
            }
        }
        check("kernel series vs closed form", worst <= 1e-3, worst, 1e-3);
    }
    // multiplier vs direct window quadrature (Simpson) on cosine modes
    {
        double worst = 0.0;
        for (double eps : {0.3, 0.5}) {
            for (int k = 1; k <= 16; ++k) {
                const int panels = 8192;
                const double x = 0.2;
                const double h = 2 * eps / panels;
                double acc = std::cos(k * (x - eps)) + std::cos(k * (x + eps));
                for (int p = 1; p < panels; ++p)
                    acc += std::cos(k * (x - eps + p * h)) * (p % 2 ? 4.0 : 2.0);
                const double filtered = acc * h / 3.0 / (2 * eps);
                worst = std::max(worst,
                                 std::abs(filtered / std::cos(k * x) - multiplier(1, eps, k)));
            }
        }
        check("multiplier vs window quadrature", worst <= 1e-9, worst, 1e-9);
    }
    // sampled eigenmode amplitudes
    {
        auto [c, s] = eigenfunction_check(3, 0.4);
        const double worst =
            std::max(std::abs(c - multiplier(1, 0.4, 3)), std::abs(s - multiplier(1, 0.4, 3)));
        check("eigenmode amplitude ratios", worst <= 1e-6, worst, 1e-6);
    }
    if (bad) {
        std::fprintf(stderr, "self-check: %d contract(s) violated\n", bad);
        return 3;
    }
    std::printf("self-check: all contracts hold\n");
    return 0;
}

std::pair<int, int> parse_orders(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("kernels: cannot parse --orders '" + text +
                                    "' (use N or A..B)");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear low-pass filters for Fourier series and sampled functions"};
    app.set_version_flag("--version", lowpass::version);
    bool self_check = false;
    app.add_flag("--self-check", self_check, "run built-in oracle comparisons and exit");

    CommonOpts o;
    std::string orders_text = "1..8";
    std::string extension = "periodic";
    double p_h = 1.0, p_L = 1.0, p_nu = 1.0, p_V0 = 1.0, p_u0 = 1.0, p_r0 = 1.0, p_cmk = 1.0;
    double time = 0.25;

    auto add_common = [&](CLI::App* cmd, bool with_io) {
        cmd->add_option("--epsilon", o.epsilon, "filter range");
        cmd->add_option("--order", o.order, "filter order N >= 1");
        cmd->add_option("--kmax", o.kmax, "series truncation");
        cmd->add_option("--modes", o.modes, "modes for field evaluation");
        cmd->add_option("--scan-modes", o.scan_modes, "modes for divergence scans");
        cmd->add_option("--grid", o.grid, "grid points");
        cmd->add_option("--format", o.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_io) cmd->add_option("--input", o.input, "input file");
        cmd->add_option("--output", o.output, "output file or directory");
    };

    auto* kernels = app.add_subcommand("kernels", "kernel tables from both representations");
    add_common(kernels, false);
    kernels->add_option("--orders", orders_text, "order range, e.g. 1..8");

    auto* fseries = app.add_subcommand("filter-series", "filter a (k,alpha,beta) CSV");
    add_common(fseries, true);

    auto* fsamples = app.add_subcommand("filter-samples", "filter an (x,f) CSV");
    add_common(fsamples, true);
    fsamples->add_option("--extension", extension, "periodic|zero")
        ->check(CLI::IsMember({"periodic", "zero"}));

    auto* cstring = app.add_subcommand("string", "plucked-string example");
    add_common(cstring, false);
    cstring->add_option("--height", p_h, "pluck height");
    cstring->add_option("--L", p_L, "string length");
    cstring->add_option("--nu", p_nu, "wave speed");
    cstring->add_option("--time", time, "profile/scan time");

    auto* cbox = app.add_subcommand("box", "rectangular-box potential example");
    add_common(cbox, false);
    cbox->add_option("--V0", p_V0, "top-surface potential");
    cbox->add_option("--L", p_L, "box width");
    cbox->add_option("--height", p_h, "box height");

    auto* ccyl = app.add_subcommand("cylinder", "cylinder heat-conduction example");
    add_common(ccyl, false);
    ccyl->add_option("--u0", p_u0, "bath temperature");
    ccyl->add_option("--r0", p_r0, "cylinder radius");
    ccyl->add_option("--cmk", p_cmk, "material constant");

    auto* diag = app.add_subcommand("diagnose", "classify coefficient decay of a series CSV");
    add_common(diag, true);

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (self_check) return run_self_check();
        if (kernels->parsed()) {
            // example defaults: eps 0.5 already set; kmax default 4096
            auto [lo, hi] = parse_orders(orders_text);
            return run_kernels(o, lo, hi);
        }
        if (fseries->parsed()) {
            if (o.output == ".") o.output = "filtered_series.csv";
            return run_filter_series(o);
        }
        if (fsamples->parsed()) {
            if (o.output == ".") o.output = "filtered_samples.csv";
            return run_filter_samples(o, extension);
        }
        if (cstring->parsed()) {
            // example-scale defaults when the flags were not given
            if (cstring->count("--epsilon") == 0) o.epsilon = 0.05;
            if (cstring->count("--grid") == 0) o.grid = 401;
            return run_string(o, p_h, p_L, p_nu, time);
        }
        if (cbox->parsed()) {
            if (cbox->count("--epsilon") == 0) o.epsilon = 0.1;
            return run_box(o, p_V0, p_L, p_h);
        }
        if (ccyl->parsed()) {
            if (ccyl->count("--epsilon") == 0) o.epsilon = 0.1;
            if (ccyl->count("--grid") == 0) o.grid = 2001;
            return run_cylinder(o, p_u0, p_r0, p_cmk);
        }
        if (diag->parsed()) return run_diagnose(o);
        std::fprintf(stderr, "%s\n", app.help().c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
