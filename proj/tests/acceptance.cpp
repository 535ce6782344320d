// Acceptance suite: end-to-end checks of the library against its numeric
// contracts. Prints one line per criterion and exits with the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lowpass/convergence.hpp"
#include "lowpass/filter.hpp"
#include "lowpass/fourier.hpp"
#include "lowpass/kernels.hpp"
#include "lowpass/pde.hpp"

using namespace lowpass;
constexpr double pi = std::numbers::pi;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %d [%s] %s — %s\n", idx, ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_kernel_series_vs_closed_form() {
    const auto t0 = std::chrono::steady_clock::now();
    const double eps = 0.5;
    const std::size_t kmax = 4096;
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 1; n <= 8; ++n) {
        const auto kern = order_n_kernel(n, eps);
        const auto series = kernel_series(n, eps, kmax);
        for (int i = 0; i <= 1000; ++i) {
            const double u = -eps + double(i) * (2 * eps / 1000.0);
            double dist = 1e300;
            for (std::size_t b = 0; b < kern.breakpoint_count(); ++b)
                dist = std::min(dist, std::abs(u - kern.breakpoint(b)));
            if (dist <= 0.05) continue;
            const double err = std::abs(evaluate(series, u) - kern.value_at(u));
            if (err > worst) {
                worst = err;
                worst_n = n;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = worst <= 1e-3 && elapsed <= 10.0;
    std::string detail = "max deviation " + fmt(worst) + " at N=" + std::to_string(worst_n) +
                         " (tol 1e-3, >0.05 from breakpoints), " + fmt(elapsed) +
                         " s (limit 10)";
    if (!ok && worst_n == 1)
        detail += "; note: the order-1 series has 1/k coefficients, so its partial-sum "
                  "remainder envelope 1/(pi K d) is ~1.5e-3 at K=4096, d=0.05 — the stated "
                  "tolerance is unreachable at these parameters (needs d >= 0.08 or K >= 8200)";
    report(1, "kernel Fourier partial sums vs closed forms (N=1..8, kmax=4096)", ok, detail);
}

void criterion_2_multiplier_equivalence() {
    const std::size_t m = 1 << 18;
    const double h = 2 * pi / double(m);
    const double eps = double(std::llround(0.5 / h)) * h; // grid-aligned ~0.5

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> ra(65, 0.0), rb(65, 0.0);
    for (int k = 1; k <= 64; ++k) {
        ra[k] = u(rng);
        rb[k] = u(rng);
    }

    struct Entry {
        const char* name;
        std::function<double(double)> fn;
    };
    const std::vector<Entry> corpus{
        {"sign", [](double x) { return x == 0 ? 0.0 : (x > 0 ? 1.0 : -1.0); }},
        {"triangle", [](double x) { return pi / 2 - std::abs(x); }},
        {"x^2", [](double x) { return x * x; }},
        {"cos3x", [](double x) { return std::cos(3 * x); }},
        {"random64", [&](double x) {
             double v = 0;
             for (int k = 1; k <= 64; ++k)
                 v += ra[k] * std::cos(k * x) + rb[k] * std::sin(k * x);
             return v;
         }}};

    double worst = 0.0;
    std::string worst_name;
    for (const auto& entry : corpus) {
        auto f = sample_function(entry.fn, m, -pi, pi);
        auto via_samples = coefficients_from_samples(filter_samples(f, {1, eps}), 64);
        auto via_series = filter_series(coefficients_from_samples(f, 64), {1, eps});
        double d = std::abs(via_samples.half_mean - via_series.half_mean);
        for (std::size_t k = 1; k <= 64; ++k) {
            d = std::max(d, std::abs(via_samples.cos_coeffs[k - 1] - via_series.cos_coeffs[k - 1]));
            d = std::max(d, std::abs(via_samples.sin_coeffs[k - 1] - via_series.sin_coeffs[k - 1]));
        }
        if (d > worst) {
            worst = d;
            worst_name = entry.name;
        }
    }
    report(2, "filter-then-transform equals transform-then-multiply (k <= 64)", worst <= 1e-6,
           "max coefficient gap " + fmt(worst) + " (" + worst_name + ", tol 1e-6)");
}

void criterion_3_first_order_property_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    std::string notes;
    bool ok = true;
    auto sub = [&](const char* what, bool pass, double measured) {
        if (!pass) {
            ok = false;
            notes += std::string(" ") + what + "=" + fmt(measured) + "!";
        }
    };

    // linear invariance, 1e-10
    {
        std::mt19937 rng(4321);
        std::uniform_real_distribution<double> ab(-3, 3), er(0.05, 0.8);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double a = ab(rng), b = ab(rng), eps = er(rng);
            auto f = sample_function([&](double x) { return a + b * x; }, 4096, -pi, pi,
                                     Extension::ZeroExtend);
            auto g = filter_samples(f, {1, eps});
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double x = g.node(i);
                if (std::abs(x) > pi - eps - 2 * f.spacing()) continue;
                worst = std::max(worst, std::abs(g.samples[i] - (a + b * x)));
            }
        }
        sub("linear", worst <= 1e-10, worst);
    }
    // polynomial closed form n <= 6, 1e-8
    {
        auto fact = [](int q) {
            double r = 1;
            for (int i = 2; i <= q; ++i) r *= i;
            return r;
        };
        auto closed = [&](int n, double eps, double x) {
            double acc = 0.0;
            for (int j = 0; n - 2 * j >= 0; ++j)
                acc += fact(n) * std::pow(eps, 2 * j) * std::pow(x, n - 2 * j) /
                       (fact(2 * j + 1) * fact(n - 2 * j));
            return acc;
        };
        const double eps = 0.3;
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n) {
            const std::size_t m = n <= 4 ? (1u << 19) : (1u << 21);
            auto f = sample_function([&](double x) { return std::pow(x, n); }, m, -pi, pi,
                                     Extension::ZeroExtend);
            auto g = filter_samples(f, {1, eps});
            for (std::size_t i = 0; i < g.size(); i += 17) {
                const double x = g.node(i);
                if (std::abs(x) > pi - eps - 2 * f.spacing()) continue;
                worst = std::max(worst, std::abs(g.samples[i] - closed(n, eps, x)));
            }
        }
        sub("powers", worst <= 1e-8, worst);
    }
    // integral invariance, 1e-10 (grid-aligned range)
    {
        const std::size_t m = 8192;
        const double h = 2 * pi / m, eps = 512 * h;
        auto f = sample_function(
            [](double x) { return std::abs(x) < 1 ? std::exp(-1 / (1 - x * x)) : 0.0; }, m, -pi,
            pi, Extension::ZeroExtend);
        auto g = filter_samples(f, {1, eps});
        double in = 0, out = 0;
        for (std::size_t i = 0; i < m; ++i) {
            in += f.samples[i] * h;
            out += g.samples[i] * h;
        }
        sub("integral", std::abs(in - out) <= 1e-10, std::abs(in - out));
    }
    // alpha_0 invariance, exact
    {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-2, 2);
        FourierSeries s = make_series(48);
        s.half_mean = u(rng);
        for (auto& c : s.cos_coeffs) c = u(rng);
        for (auto& c : s.sin_coeffs) c = u(rng);
        bool exact = true;
        for (int n = 1; n <= 3; ++n)
            exact = exact && filter_series(s, {n, 0.37}).half_mean == s.half_mean;
        sub("alpha0", exact, exact ? 0.0 : 1.0);
    }
    // delta -> rectangular pulse at grid tolerance
    {
        const std::size_t m = 8192;
        const double h = 2 * pi / m, eps = 0.5;
        SampledFunction f;
        f.lo = -pi;
        f.hi = pi;
        f.extension = Extension::ZeroExtend;
        f.samples.assign(m, 0.0);
        f.samples[m / 2] = 1.0 / h;
        auto g = filter_samples(f, {1, eps});
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = g.node(i);
            if (std::abs(x) < eps - 2 * h)
                worst = std::max(worst, std::abs(g.samples[i] - 1.0 / (2 * eps)));
            else if (std::abs(x) > eps + 2 * h)
                worst = std::max(worst, std::abs(g.samples[i]));
        }
        sub("delta", worst <= 1e-10, worst);
    }
    // midpoint limit of a unit step, 0.5 +- 1e-3
    {
        auto r = midpoint_limit_check([](double x) { return x < 0 ? 0.0 : 1.0; }, 0.0,
                                      {0.2, 0.1, 0.05, 0.025, 0.0125});
        sub("midpoint", r.trend_ok && std::abs(r.value - 0.5) <= 1e-3, r.value);
    }
    // derivative formula, exact arithmetic identity
    {
        auto cube = [](double x) { return x * x * x; };
        const bool exact =
            filtered_derivative_at(cube, 0.1, 1.0) == (cube(1.1) - cube(0.9)) / (2 * 0.1);
        sub("derivative", exact, exact ? 0.0 : 1.0);
    }
    const double elapsed = seconds_since(t0);
    if (elapsed > 5.0) {
        ok = false;
        notes += " runtime=" + fmt(elapsed) + "s!";
    }
    report(3, "first-order filter property suite", ok,
           notes.empty() ? "all sub-checks green, " + fmt(elapsed) + " s (limit 5)"
                         : "failed:" + notes);
}

void criterion_4_commutation() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-1, 1), er(0.2, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        FourierSeries s = make_series(64);
        s.half_mean = u(rng);
        for (auto& c : s.cos_coeffs) c = u(rng);
        for (auto& c : s.sin_coeffs) c = u(rng);
        const FilterSpec spec{1 + trial % 3, er(rng)};
        worst = std::max(worst, commutation_residual(s, spec));
    }
    report(4, "filter and second derivative commute (100 random series, N in {1,2,3})",
           worst <= 1e-12, "max residual " + fmt(worst) + " (tol 1e-12)");
}

void criterion_5_plucked_string() {
    std::string notes;
    bool ok = true;

    // (a) unfiltered position at the plucking point, 512 modes
    auto s0 = make_solution(Problem::PluckedString, {{"h", 1.0}, {"L", 1.0}, {"nu", 1.0}}, 0.0,
                            512);
    const double mid = evaluate_field(s0, {Field::Position, 0.5, 0.0}).value;
    if (std::abs(mid - 1.0) > 1e-3) {
        ok = false;
        notes += " midpoint=" + fmt(mid) + "!";
    }

    // (b) filtered t = 0 profile vs the window average of the triangle
    const double eps = 0.05;
    auto sf = make_solution(Problem::PluckedString, {{"h", 1.0}, {"L", 1.0}, {"nu", 1.0}}, eps,
                            2048);
    auto tri = [](double x) {
        const double xf = std::abs(x);
        const double v = xf <= 0.5 ? 2 * xf : 2 * (1 - xf);
        return x < 0 ? -v : v;
    };
    auto carrier = sample_function(tri, 8192, -1.0, 1.0, Extension::Periodic);
    auto filt = filter_samples(carrier, {1, eps});
    double sup = 0.0;
    for (std::size_t i = 0; i < filt.size(); i += 2) {
        const double x = filt.node(i);
        if (x < 0) continue;
        sup = std::max(sup, std::abs(evaluate_field(sf, {Field::Position, x, 0.0}).value -
                                     filt.samples[i]));
    }
    if (sup > 1e-4) {
        ok = false;
        notes += " profile_sup=" + fmt(sup) + "!";
    }

    // (c) Cauchy diagnostic at generic probes: unfiltered acceleration is
    // divergent, filtered convergent. Probes sit >= 0.08 from every
    // traveling-phase singularity (checked below).
    const double t = 0.25;
    const std::vector<double> probes{0.45, 0.55, 0.92};
    for (double x : probes) {
        for (double se : {eps, -eps}) {
            for (double sx : {x, -x}) {
                for (double st : {t, -t}) {
                    double phase = std::fmod(0.5 + se + st + sx, 2.0);
                    if (phase < 0) phase += 2.0;
                    const double dist = std::min({phase, std::abs(phase - 1.0), 2.0 - phase});
                    if (dist < 0.08) {
                        ok = false;
                        notes += " probe_too_close!";
                    }
                }
            }
        }
    }
    auto s0_scan = make_solution(Problem::PluckedString, {{"h", 1.0}, {"L", 1.0}, {"nu", 1.0}},
                                 0.0, 8192);
    auto sf_scan = make_solution(Problem::PluckedString, {{"h", 1.0}, {"L", 1.0}, {"nu", 1.0}},
                                 eps, 8192);
    auto scan_u =
        divergence_scan(s0_scan, Field::Acceleration, ScanCurve::StringAtTime, probes, 8192, t);
    auto scan_f =
        divergence_scan(sf_scan, Field::Acceleration, ScanCurve::StringAtTime, probes, 8192, t);
    std::size_t flagged_u = 0, flagged_f = 0;
    for (const auto& p : scan_u) flagged_u += p.flagged;
    for (const auto& p : scan_f) flagged_f += p.flagged;
    if (flagged_u != probes.size()) {
        ok = false;
        notes += " unfiltered_flags=" + std::to_string(flagged_u) + "!";
    }
    if (flagged_f != 0) {
        ok = false;
        notes += " filtered_flags=" + std::to_string(flagged_f) + "!";
    }

    report(5, "plucked string: limits, filtered profile, divergence verdicts", ok,
           ok ? "midpoint " + fmt(mid) + ", profile sup gap " + fmt(sup) +
                    ", flags unfiltered 3/3 filtered 0/3"
              : "failed:" + notes);
}

void criterion_6_box() {
    std::string notes;
    bool ok = true;

    auto s0 = make_solution(Problem::BoxPotential, {{"V0", 1.0}, {"L", 1.0}, {"h", 1.0}}, 0.0,
                            10000);
    const double phi = evaluate_field(s0, {Field::Potential, 0.5, 1.0}).value;
    if (std::abs(phi - 1.0) > 2e-3) {
        ok = false;
        notes += " phi=" + fmt(phi) + "!";
    }

    auto sf = make_solution(Problem::BoxPotential, {{"V0", 1.0}, {"L", 1.0}, {"h", 1.0}}, 0.1,
                            8192);
    std::vector<double> grid(1001);
    for (int i = 0; i <= 1000; ++i) grid[i] = double(i) * 1e-3;
    auto scan = divergence_scan(sf, Field::Ey, ScanCurve::TopSurface, grid, 8192);
    std::vector<double> flagged;
    for (const auto& p : scan)
        if (p.flagged) flagged.push_back(p.coord);
    const bool flags_ok = flagged.size() == 2 && std::abs(flagged[0] - 0.1) <= 1e-3 &&
                          std::abs(flagged[1] - 0.9) <= 1e-3;
    if (!flags_ok) {
        ok = false;
        notes += " flags=" + std::to_string(flagged.size()) + "!";
    }
    report(6, "box: potential limit and E_y top-surface scan", ok,
           ok ? "phi(L/2,h) " + fmt(phi) + ", scan flags exactly {eps, L-eps}" : "failed:" + notes);
}

void criterion_7_cylinder() {
    std::string notes;
    bool ok = true;

    auto s0 = make_solution(Problem::CylinderHeat, {{"u0", 1.0}, {"r0", 1.0}, {"cmu_kappa", 1.0}},
                            0.0, 10000);
    const double u = evaluate_field(s0, {Field::Temperature, 1.0, pi / 2}).value;
    if (std::abs(u - 1.0) > 2e-3) {
        ok = false;
        notes += " u=" + fmt(u) + "!";
    }

    const double eps = pi / 20; // commensurate with the scan grid below
    auto sf = make_solution(Problem::CylinderHeat, {{"u0", 1.0}, {"r0", 1.0}, {"cmu_kappa", 1.0}},
                            eps, 8192);
    std::vector<double> grid(4001);
    for (int i = 0; i <= 4000; ++i) grid[i] = -pi + double(i) * (pi / 2000);
    auto scan = divergence_scan(sf, Field::FluxR, ScanCurve::CylinderSurface, grid, 8192);
    std::vector<double> flagged;
    for (const auto& p : scan)
        if (p.flagged) flagged.push_back(p.coord);
    const std::vector<double> expect{-pi + eps, -eps, eps, pi - eps};
    bool flags_ok = flagged.size() == 4;
    if (flags_ok)
        for (int i = 0; i < 4; ++i) flags_ok = flags_ok && std::abs(flagged[i] - expect[i]) <= pi / 2000;
    if (!flags_ok) {
        ok = false;
        notes += " flags=" + std::to_string(flagged.size()) + "!";
    }
    report(7, "cylinder: temperature limit and j_r surface scan", ok,
           ok ? "u(r0,pi/2) " + fmt(u) + ", scan flags exactly the 4 ramp edges"
              : "failed:" + notes);
}

void criterion_8_pair_forms() {
    double worst = 0.0;
    {
        auto s = make_solution(Problem::PluckedString, {{"h", 1.0}, {"L", 1.0}, {"nu", 1.0}},
                               0.02, 4096);
        for (double x : {0.15, 0.3, 0.52, 0.8})
            for (double t : {0.0, 0.2, 0.41}) {
                const double modal = evaluate_field(s, {Field::Acceleration, x, t}).value;
                worst = std::max(worst,
                                 std::abs(string_acceleration_traveling(s, x, t) - modal));
            }
    }
    {
        auto s = make_solution(Problem::BoxPotential, {{"V0", 1.0}, {"L", 1.0}, {"h", 1.0}}, 0.05,
                               4096);
        for (double x : {0.1, 0.25, 0.4, 0.77}) {
            const double direct = evaluate_field(s, {Field::Ex, x, 1.0}).value;
            worst = std::max(worst, std::abs(box_ex_top_pair_form(s, x) - direct));
        }
    }
    {
        auto s = make_solution(Problem::CylinderHeat,
                               {{"u0", 1.0}, {"r0", 1.0}, {"cmu_kappa", 1.0}}, 0.05, 4096);
        for (double th : {0.2, 1.0, -2.3, 3.0}) {
            const double direct = evaluate_field(s, {Field::FluxTheta, 1.0, th}).value;
            worst = std::max(worst, std::abs(cylinder_flux_pair_form(s, th) - direct));
        }
    }
    report(8, "pair/traveling forms agree with direct modal sums (4096 modes)", worst <= 1e-6,
           "max gap " + fmt(worst) + " (tol 1e-6)");
}

void criterion_9_double_filter() {
    std::string notes;
    bool ok = true;

    std::mt19937 rng(2468);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
        FourierSeries s = make_series(2048);
        s.half_mean = u(rng);
        for (auto& c : s.cos_coeffs) c = u(rng);
        for (auto& c : s.sin_coeffs) c = u(rng);
        const double eps = 0.5;
        auto once = filter_series(s, {2, eps});
        auto twice = filter_series(filter_series(s, {1, eps / 2}), {1, eps / 2});
        if (once.cos_coeffs != twice.cos_coeffs || once.sin_coeffs != twice.sin_coeffs ||
            once.half_mean != twice.half_mean) {
            ok = false;
            notes += " bitwise!";
            break;
        }
        const auto rep = classify_convergence(once);
        if (rep.classification != ConvergenceClass::AbsoluteUniform) {
            ok = false;
            notes += " class=" + std::string(to_string(rep.classification)) + "!";
        }
    }
    // the delta series is the extreme bounded-coefficient case
    auto delta = kernel_series(0, 0.5, 2048, true);
    const auto rep = classify_convergence(filter_series(delta, {2, 0.5}));
    if (rep.classification != ConvergenceClass::AbsoluteUniform) {
        ok = false;
        notes += " delta_class=" + std::string(to_string(rep.classification)) + "!";
    }
    report(9, "double first-order pass equals order-2 bit for bit and regularises", ok,
           ok ? "coefficients identical; filtered bounded series classify absolute-uniform"
              : "failed:" + notes);
}

} // namespace

int main() {
    criterion_1_kernel_series_vs_closed_form();
    criterion_2_multiplier_equivalence();
    criterion_3_first_order_property_suite();
    criterion_4_commutation();
    criterion_5_plucked_string();
    criterion_6_box();
    criterion_7_cylinder();
    criterion_8_pair_forms();
    criterion_9_double_filter();
    if (failures == 0)
        std::printf("acceptance: all criteria green\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
