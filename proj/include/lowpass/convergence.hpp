#pragma once

// Coefficient-decay diagnostics: fit a decay exponent on the tail of a
// coefficient sequence and bucket the series into convergence classes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowpass/fourier.hpp"

namespace lowpass {

enum class ConvergenceClass {
    AbsoluteUniform,       // summable coefficients (Weierstrass regime)
    PointwiseOnly,         // ~1/k decay (Dirichlet-test regime)
    DivergentBoundedCoeffs, // bounded but non-decaying coefficients
    DivergentGrowingCoeffs, // coefficients grow along the tail
};

inline const char* to_string(ConvergenceClass c) {
    switch (c) {
        case ConvergenceClass::AbsoluteUniform: return "absolute-uniform";
        case ConvergenceClass::PointwiseOnly: return "pointwise-only";
        case ConvergenceClass::DivergentBoundedCoeffs: return "divergent-bounded-coeffs";
        case ConvergenceClass::DivergentGrowingCoeffs: return "divergent-growing-coeffs";
    }
    return "?";
}

struct ConvergenceReport {
    ConvergenceClass classification = ConvergenceClass::AbsoluteUniform;
    double decay_exponent = 0.0; // p in c_k ~ k^(-p), from the tail fit
    double tail_fraction = 0.5;
    std::string notes;
};

// Classification thresholds. The tail fit uses a log-spaced bin envelope
// (per-bin argmax) so that oscillatory multipliers such as sinc do not drag
// the slope; on monotone data it reduces to the plain log-log fit.
namespace convergence_detail {

inline constexpr double tail_fraction = 0.5;
inline constexpr double p_absolute_uniform = 1.5;
inline constexpr double p_pointwise = 0.5;
inline constexpr int envelope_bins = 24;

// Least-squares slope of log(c) vs log(k) over per-bin envelope maxima of
// the tail k in [k_max*tail_fraction, k_max]. Returns the decay exponent
// p = -slope. Zero entries cannot enter the log fit and are skipped.
inline double tail_decay_exponent(const std::vector<double>& c) {
    const std::size_t k_max = c.size() - 1;
    const std::size_t t0 = std::max<std::size_t>(1, std::size_t(double(k_max) * tail_fraction));
    const double log_ratio = std::log(double(k_max) / double(t0)) / envelope_bins;
    std::vector<double> lx, ly;
    for (int bin = 0; bin < envelope_bins; ++bin) {
        const auto klo = std::size_t(std::ceil(double(t0) * std::exp(bin * log_ratio)));
        const auto khi = std::min(k_max, std::size_t(std::floor(double(t0) * std::exp((bin + 1) * log_ratio))));
        double best = 0.0;
        std::size_t best_k = 0;
        for (std::size_t k = klo; k <= khi; ++k)
            if (c[k] > best) { best = c[k]; best_k = k; }
        if (best_k != 0) {
            lx.push_back(std::log(double(best_k)));
            ly.push_back(std::log(best));
        }
    }
    if (lx.size() < 2) return 0.0;
    double n = double(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return -(n * sxy - sx * sy) / denom;
}

// Growth check over the tail: compares envelope maxima of the last quarter
// against the preceding quarter.
inline bool tail_growing(const std::vector<double>& c) {
    const std::size_t k_max = c.size() - 1;
    const std::size_t t0 = std::max<std::size_t>(1, std::size_t(double(k_max) * tail_fraction));
    const std::size_t mid = (t0 + k_max) / 2;
    double first = 0, second = 0;
    for (std::size_t k = t0; k <= mid; ++k) first = std::max(first, c[k]);
    for (std::size_t k = mid + 1; k <= k_max; ++k) second = std::max(second, c[k]);
    return second > first;
}

} // namespace convergence_detail

/// Classifies the decay of combined coefficient magnitudes
/// c_k = max(|alpha_k|, |beta_k|). Thresholds on the fitted exponent p:
/// p >= 1.5 absolute-uniform; 0.5 <= p < 1.5 pointwise-only; p < 0.5 with
/// bounded tail divergent-bounded; p < 0 with a growing tail
/// divergent-growing. Requires k_max >= 32.
inline ConvergenceReport classify_convergence(const FourierSeries& s) {
    check_series(s);
    if (s.k_max() < 32)
        throw std::invalid_argument("classify_convergence: need k_max >= 32, got " +
                                    std::to_string(s.k_max()));
    std::vector<double> c(s.k_max() + 1, 0.0);
    bool any = false;
    for (std::size_t k = 1; k <= s.k_max(); ++k) {
        c[k] = std::max(std::abs(s.cos_coeffs[k - 1]), std::abs(s.sin_coeffs[k - 1]));
        any = any || c[k] != 0.0;
    }

    ConvergenceReport rep;
    rep.tail_fraction = convergence_detail::tail_fraction;
    if (!any) {
        rep.classification = ConvergenceClass::AbsoluteUniform;
        rep.decay_exponent = 0.0;
        rep.notes = "zero series";
        return rep;
    }

    const double p = convergence_detail::tail_decay_exponent(c);
    rep.decay_exponent = p;
    if (p >= convergence_detail::p_absolute_uniform) {
        rep.classification = ConvergenceClass::AbsoluteUniform;
    } else if (p >= convergence_detail::p_pointwise) {
        rep.classification = ConvergenceClass::PointwiseOnly;
    } else if (p < 0.0 && convergence_detail::tail_growing(c)) {
        rep.classification = ConvergenceClass::DivergentGrowingCoeffs;
        rep.notes = "tail envelope grows";
    } else {
        rep.classification = ConvergenceClass::DivergentBoundedCoeffs;
        rep.notes = "bounded non-decaying coefficients";
    }
    return rep;
}

} // namespace lowpass
