#pragma once

// Test-only reference computations, kept independent of the library paths
// they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// composite Simpson rule, n panels (n even)
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4096) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// integral of f over [a, b] with two-point Gauss per segment, segments split
// at the given internal points; exact for integrands that are cubic (or
// lower) between consecutive split points
inline double gauss2_split(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> splits) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    double acc = 0.0;
    const double g = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const double lo = std::max(a, splits[i]);
        const double hi = std::min(b, splits[i + 1]);
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        acc += half * (f(mid - half * g) + f(mid + half * g));
    }
    return acc;
}

// partial sum of the Leibniz series sum_j (-1)^j / (2j+1)
inline double leibniz(std::size_t terms) {
    double acc = 0.0;
    for (std::size_t j = 0; j < terms; ++j)
        acc += (j % 2 == 0 ? 1.0 : -1.0) / double(2 * j + 1);
    return acc;
}

// sum над odd k <= k_top of 1/k^2
inline double odd_inverse_squares(std::size_t k_top) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= k_top; k += 2) acc += 1.0 / (double(k) * double(k));
    return acc;
}

// plain least-squares slope of log(c_k) vs log(k) over k in [k_lo, k_hi],
// skipping non-positive entries; returns decay exponent p = -slope
inline double loglog_decay_fit(const std::vector<double>& c, std::size_t k_lo, std::size_t k_hi) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = k_lo; k <= k_hi && k < c.size(); ++k) {
        if (!(c[k] > 0)) continue;
        const double x = std::log(double(k)), y = std::log(c[k]);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracles
