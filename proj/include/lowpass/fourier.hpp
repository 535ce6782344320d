#pragma once

// Truncated trigonometric series on the canonical periodic interval [-pi, pi],
// plus a uniformly sampled carrier for real functions on an interval.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowpass {

/// Truncated Fourier series
///   f(x) = half_mean/2 + sum_{k=1..k_max} [alpha_k cos(kx) + beta_k sin(kx)].
/// `half_mean` stores the alpha_0 coefficient; the constant term of the series
/// is half_mean/2 (so half_mean equals twice the mean of the function).
struct FourierSeries {
    double half_mean = 0.0;
    std::vector<double> cos_coeffs; // alpha_k, k = 1..k_max
    std::vector<double> sin_coeffs; // beta_k,  k = 1..k_max
    double period_half_width = std::numbers::pi;

    std::size_t k_max() const { return cos_coeffs.size(); }

    double alpha(std::size_t k) const {
        if (k == 0) return half_mean;
        return cos_coeffs.at(k - 1);
    }
    double beta(std::size_t k) const {
        if (k == 0) return 0.0;
        return sin_coeffs.at(k - 1);
    }
};

/// Makes a zeroed series with the given number of modes.
inline FourierSeries make_series(std::size_t k_max) {
    FourierSeries s;
    s.cos_coeffs.assign(k_max, 0.0);
    s.sin_coeffs.assign(k_max, 0.0);
    return s;
}

inline void check_series(const FourierSeries& s) {
    if (s.cos_coeffs.size() != s.sin_coeffs.size())
        throw std::invalid_argument("FourierSeries: cos/sin coefficient counts differ");
    if (!(s.period_half_width > 0))
        throw std::invalid_argument("FourierSeries: period_half_width must be positive");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(s.half_mean))
        throw std::invalid_argument("FourierSeries: non-finite half_mean");
    for (double v : s.cos_coeffs)
        if (!finite(v)) throw std::invalid_argument("FourierSeries: non-finite cosine coefficient");
    for (double v : s.sin_coeffs)
        if (!finite(v)) throw std::invalid_argument("FourierSeries: non-finite sine coefficient");
}

/// Partial sum of the series at x, modes ascending. With k_upto given, only
/// modes k <= k_upto enter the sum; k_upto must not exceed k_max.
inline double evaluate(const FourierSeries& s, double x,
                       std::optional<std::size_t> k_upto = std::nullopt) {
    std::size_t km = s.k_max();
    if (k_upto) {
        if (*k_upto > km)
            throw std::invalid_argument("evaluate: k_upto exceeds k_max (" +
                                        std::to_string(*k_upto) + " > " + std::to_string(km) + ")");
        km = *k_upto;
    }
    double acc = 0.5 * s.half_mean;
    for (std::size_t k = 1; k <= km; ++k)
        acc += s.cos_coeffs[k - 1] * std::cos(double(k) * x) +
               s.sin_coeffs[k - 1] * std::sin(double(k) * x);
    return acc;
}

enum class Extension { Periodic, ZeroExtend };

/// Uniform samples of a real function on [lo, hi). Nodes sit at
/// x_i = lo + i*h, i = 0..M-1, h = (hi-lo)/M; the node at hi is excluded
/// (under Periodic it coincides with lo). Out-of-range behaviour is set by
/// `extension`. `boundary_margin` records, for ZeroExtend data, the distance
/// from each end within which values were computed against the zero
/// extension by a filter pass (0 for untouched or periodic data).
struct SampledFunction {
    std::vector<double> samples;
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
    Extension extension = Extension::Periodic;
    double boundary_margin = 0.0;

    std::size_t size() const { return samples.size(); }
    double spacing() const { return (hi - lo) / double(samples.size()); }
    double node(std::size_t i) const { return lo + double(i) * spacing(); }
};

inline void check_samples(const SampledFunction& f) {
    if (f.samples.size() < 2)
        throw std::invalid_argument("SampledFunction: need at least 2 samples");
    if (!(f.lo < f.hi))
        throw std::invalid_argument("SampledFunction: interval must satisfy lo < hi");
    for (double v : f.samples)
        if (!std::isfinite(v))
            throw std::invalid_argument("SampledFunction: non-finite sample");
}

/// Samples fn at the M grid nodes of [lo, hi).
template <typename Fn>
SampledFunction sample_function(Fn&& fn, std::size_t m, double lo, double hi,
                                Extension ext = Extension::Periodic) {
    SampledFunction s;
    s.lo = lo;
    s.hi = hi;
    s.extension = ext;
    s.samples.resize(m);
    const double h = (hi - lo) / double(m);
    for (std::size_t i = 0; i < m; ++i) s.samples[i] = fn(lo + double(i) * h);
    return s;
}

/// Fourier coefficients by trapezoidal quadrature on the uniform periodic
/// grid of [-pi, pi] (the trapezoid rule over a full period reduces to the
/// plain node sum, i.e. the discrete orthogonality sum). Requires a periodic
/// carrier and M >= 4*k_max to guard against aliasing.
inline FourierSeries coefficients_from_samples(const SampledFunction& f, std::size_t k_max) {
    check_samples(f);
    if (f.extension != Extension::Periodic)
        throw std::invalid_argument("coefficients_from_samples: carrier must be Periodic");
    constexpr double pi = std::numbers::pi;
    if (std::abs(f.lo + pi) > 1e-12 || std::abs(f.hi - pi) > 1e-12)
        throw std::invalid_argument("coefficients_from_samples: interval must be [-pi, pi]");
    const std::size_t m = f.samples.size();
    if (m < 4 * k_max)
        throw std::invalid_argument("coefficients_from_samples: aliasing guard M >= 4*k_max "
                                    "violated (M=" + std::to_string(m) +
                                    ", k_max=" + std::to_string(k_max) + ")");

    FourierSeries out = make_series(k_max);
    const double h = f.spacing();
    double mean_acc = 0.0;
    for (double v : f.samples) mean_acc += v;
    out.half_mean = mean_acc * h / pi;
    for (std::size_t k = 1; k <= k_max; ++k) {
        double ca = 0.0, cb = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = f.lo + double(i) * h;
            ca += f.samples[i] * std::cos(double(k) * x);
            cb += f.samples[i] * std::sin(double(k) * x);
        }
        out.cos_coeffs[k - 1] = ca * h / pi;
        out.sin_coeffs[k - 1] = cb * h / pi;
    }
    return out;
}

} // namespace lowpass
