#pragma once

// The low-pass filter as an operator: window averages on sampled functions,
// the sinc multiplier on Fourier series, and the limit/derivative formulas
// that characterise the first-order filter.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lowpass/fourier.hpp"
#include "lowpass/kernels.hpp"

namespace lowpass {

/// Filter order N >= 1 and range eps > 0 (constant-range convention: the
/// order-N filter iterates N first-order passes of range eps/N).
struct FilterSpec {
    int order = 1;
    double range = 0.0;
};

inline void check_spec(const FilterSpec& spec) {
    if (spec.order < 1) throw std::invalid_argument("FilterSpec: order must be >= 1");
    if (!(spec.range > 0)) throw std::invalid_argument("FilterSpec: range must be positive");
}

namespace filter_detail {

// One first-order pass of range eps over the piecewise-linear interpolant of
// the samples. The window integral is exact for the interpolant: full cells
// by trapezoid prefix sums, fractional end cells analytically.
inline std::vector<double> window_average_pass(const SampledFunction& f, double eps) {
    const long m = long(f.samples.size());
    const double h = f.spacing();
    const bool periodic = f.extension == Extension::Periodic;

    auto node = [&](long j) -> double {
        if (periodic) {
            long r = j % m;
            if (r < 0) r += m;
            return f.samples[std::size_t(r)];
        }
        if (j < 0 || j >= m) return 0.0;
        return f.samples[std::size_t(j)];
    };

    const double w = eps / h; // window half-width in cells
    const long c = long(std::floor(w)) + 2;
    const long lo_j = -c, hi_j = m + c;
    std::vector<double> prefix(std::size_t(hi_j - lo_j) + 1, 0.0);
    for (long j = lo_j; j < hi_j; ++j)
        prefix[std::size_t(j - lo_j) + 1] =
            prefix[std::size_t(j - lo_j)] + 0.5 * (node(j) + node(j + 1)) * h;

    // integral of the interpolant from node lo_j up to fractional node index u
    auto upto = [&](double u) -> double {
        const double cf = std::floor(u);
        const long cell = long(cf);
        const double fr = u - cf;
        const double f0 = node(cell), f1 = node(cell + 1);
        return prefix[std::size_t(cell - lo_j)] + h * (f0 * fr + 0.5 * (f1 - f0) * fr * fr);
    };

    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    for (long i = 0; i < m; ++i)
        out[std::size_t(i)] = (upto(double(i) + w) - upto(double(i) - w)) / (2.0 * eps);
    return out;
}

} // namespace filter_detail

/// Order-N moving-average filter on a sampled function: each output sample is
/// the window average of the input over [x_i - eps/N, x_i + eps/N], iterated
/// N times. Periodic carriers wrap; ZeroExtend carriers read zero outside the
/// interval and get `boundary_margin` advanced by the full range.
inline SampledFunction filter_samples(const SampledFunction& f, const FilterSpec& spec) {
    check_samples(f);
    check_spec(spec);
    const double h = f.spacing();
    const double sub = spec.range / double(spec.order);
    if (sub < 2.0 * h)
        throw std::invalid_argument("filter_samples: per-pass range " + std::to_string(sub) +
                                    " below resolution (need >= 2h = " + std::to_string(2 * h) +
                                    ")");
    if (f.extension == Extension::Periodic && spec.range > 0.5 * (f.hi - f.lo))
        throw std::invalid_argument("filter_samples: range exceeds the periodic half-width");

    SampledFunction out = f;
    for (int pass = 0; pass < spec.order; ++pass)
        out.samples = filter_detail::window_average_pass(out, sub);
    if (f.extension == Extension::ZeroExtend) out.boundary_margin = f.boundary_margin + spec.range;
    return out;
}

/// Multiplier action on a series: every alpha_k, beta_k picks up one factor
/// sin(k eps/N)/(k eps/N) per pass; half_mean is untouched (the filter does
/// not change the average). Applied pass by pass so that an order-N run is
/// operation-for-operation identical to N first-order runs at range eps/N.
inline FourierSeries filter_series(const FourierSeries& s, const FilterSpec& spec) {
    check_series(s);
    check_spec(spec);
    if (spec.range > std::numbers::pi)
        throw std::invalid_argument("filter_series: range exceeds the periodic half-width pi");
    FourierSeries out = s;
    const double sub = spec.range / double(spec.order);
    for (int pass = 0; pass < spec.order; ++pass) {
        for (std::size_t k = 1; k <= out.k_max(); ++k) {
            const double m = multiplier(1, sub, int(k));
            out.cos_coeffs[k - 1] *= m;
            out.sin_coeffs[k - 1] *= m;
        }
    }
    return out;
}

/// Derivative of the first-order filtered function at x, which exists for
/// any continuous f and equals (f(x+eps) - f(x-eps)) / (2 eps).
inline double filtered_derivative_at(const std::function<double(double)>& f, double eps,
                                     double x) {
    if (!(eps > 0)) throw std::invalid_argument("filtered_derivative_at: range must be positive");
    return (f(x + eps) - f(x - eps)) / (2.0 * eps);
}

struct MidpointLimit {
    double value = 0.0;  // last window average in the sequence
    bool trend_ok = false; // differences shrink (or vanish) along the sequence
};

/// Tracks f_eps(x0) along a decreasing eps sequence. For f with an isolated
/// jump at x0 the limit is the average of the two lateral limits. The window
/// integral of the callable uses a composite midpoint rule (4096 panels), so
/// an interior jump costs O(panel width) only.
inline MidpointLimit midpoint_limit_check(const std::function<double(double)>& f, double x0,
                                          const std::vector<double>& eps_sequence = {
                                              0.2, 0.1, 0.05, 0.025, 0.0125}) {
    if (eps_sequence.size() < 4)
        throw std::invalid_argument("midpoint_limit_check: need at least 4 ranges");
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] > 0))
            throw std::invalid_argument("midpoint_limit_check: ranges must be positive");
        if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
            throw std::invalid_argument("midpoint_limit_check: ranges must strictly decrease");
    }
    constexpr int panels = 4096;
    std::vector<double> values;
    for (double eps : eps_sequence) {
        const double ph = 2.0 * eps / panels;
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) acc += f(x0 - eps + (p + 0.5) * ph);
        values.push_back(acc * ph / (2.0 * eps));
    }
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double atol = 1e-12 * std::max(1.0, scale);
    auto shrinking = [&](double d_prev, double d_next) { return d_next <= 0.75 * d_prev + atol; };
    const std::size_t n = values.size();
    const double d1 = std::abs(values[n - 3] - values[n - 4]);
    const double d2 = std::abs(values[n - 2] - values[n - 3]);
    const double d3 = std::abs(values[n - 1] - values[n - 2]);
    MidpointLimit out;
    out.value = values.back();
    out.trend_ok = shrinking(d1, d2) && shrinking(d2, d3);
    return out;
}

/// Term-wise second derivative in coefficient space:
/// alpha_k -> -k^2 alpha_k, beta_k -> -k^2 beta_k, constant term drops.
inline FourierSeries second_derivative(const FourierSeries& s) {
    FourierSeries out = s;
    out.half_mean = 0.0;
    for (std::size_t k = 1; k <= s.k_max(); ++k) {
        const double f = -double(k) * double(k);
        out.cos_coeffs[k - 1] *= f;
        out.sin_coeffs[k - 1] *= f;
    }
    return out;
}

/// Largest coefficient difference between (filter then d^2/dx^2) and
/// (d^2/dx^2 then filter). Both are diagonal in the Fourier basis, so the
/// residual is pure rounding.
inline double commutation_residual(const FourierSeries& s, const FilterSpec& spec) {
    if (s.k_max() < 1) throw std::invalid_argument("commutation_residual: need k_max >= 1");
    const FourierSeries a = filter_series(second_derivative(s), spec);
    const FourierSeries b = second_derivative(filter_series(s, spec));
    double worst = std::abs(a.half_mean - b.half_mean);
    for (std::size_t k = 1; k <= s.k_max(); ++k) {
        worst = std::max(worst, std::abs(a.cos_coeffs[k - 1] - b.cos_coeffs[k - 1]));
        worst = std::max(worst, std::abs(a.sin_coeffs[k - 1] - b.sin_coeffs[k - 1]));
    }
    return worst;
}

/// Filters sampled cos(kx) and sin(kx) and fits the output amplitude against
/// the input mode. Both ratios equal sinc(k eps) up to quadrature error, and
/// they equal each other (the pair shares one eigenvalue).
inline std::pair<double, double> eigenfunction_check(int k, double eps,
                                                     std::size_t grid_samples = 8192) {
    if (k < 1) throw std::invalid_argument("eigenfunction_check: mode must be >= 1");
    if (!(eps > 0 && eps <= std::numbers::pi))
        throw std::invalid_argument("eigenfunction_check: need 0 < eps <= pi");
    constexpr double pi = std::numbers::pi;
    const FilterSpec spec{1, eps};
    auto fit = [&](bool use_cos) {
        auto f = sample_function(
            [&](double x) { return use_cos ? std::cos(k * x) : std::sin(k * x); }, grid_samples,
            -pi, pi, Extension::Periodic);
        const SampledFunction g = filter_samples(f, spec);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < grid_samples; ++i) {
            const double basis = use_cos ? std::cos(k * g.node(i)) : std::sin(k * g.node(i));
            num += g.samples[i] * basis;
            den += basis * basis;
        }
        return num / den;
    };
    return {fit(true), fit(false)};
}

} // namespace lowpass
