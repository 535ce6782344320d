#pragma once

// Exact piecewise-polynomial kernels of the order-N box filters, their
// symbolic convolution, their Fourier multipliers and truncated series.
//
// Kernels are kept as polynomial pieces rather than samples so that the
// unit-integral, evenness and smoothness checks are exact polynomial
// arithmetic. Convolution of two compactly supported piecewise polynomials
// is again piecewise polynomial; it is computed symbolically below.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowpass/fourier.hpp"

namespace lowpass {

/// sin(t)/t with the analytic continuation sinc(0) = 1.
inline double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

// ---------------------------------------------------------------------------
// small dense polynomial helpers, coefficients ascending
namespace poly {

using Coeffs = std::vector<double>;

inline double eval(const Coeffs& p, double u) {
    double acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * u + p[i];
    return acc;
}

inline void add_inplace(Coeffs& a, const Coeffs& b, double scale = 1.0) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline Coeffs derivative(const Coeffs& p) {
    if (p.size() <= 1) return {};
    Coeffs out(p.size() - 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * double(i);
    return out;
}

/// Expansion of (u - c)^n as a polynomial in u.
inline Coeffs shifted_power(std::size_t n, double c) {
    Coeffs out(n + 1, 0.0);
    // binomial row with alternating (-c) powers
    double binom = 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
        out[n - j] = binom * std::pow(-c, double(j));
        binom = binom * double(n - j) / double(j + 1);
    }
    return out;
}

/// q(w) = p(a w + b), by Horner over polynomial coefficients.
inline Coeffs compose_linear(const Coeffs& p, double a, double b) {
    Coeffs q;
    for (std::size_t i = p.size(); i-- > 0;) {
        // q = q * (a w + b) + p[i]
        Coeffs next(q.size() + 1, 0.0);
        for (std::size_t j = 0; j < q.size(); ++j) {
            next[j] += b * q[j];
            next[j + 1] += a * q[j];
        }
        if (next.empty()) next.push_back(0.0);
        next[0] += p[i];
        q = std::move(next);
    }
    return q;
}

inline void trim(Coeffs& p, double tol) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
}

} // namespace poly

// ---------------------------------------------------------------------------

struct KernelPiece {
    double lo = 0.0;
    double hi = 0.0;
    poly::Coeffs coeffs; // polynomial in the piece-local variable v = u - lo

    double width() const { return hi - lo; }
    double value(double u) const { return poly::eval(coeffs, u - lo); }
};

/// Compactly supported even kernel stored as exact polynomial pieces, each in
/// its own local coordinate (keeping every coefficient at value scale).
/// `order` is the filter order N (degree of each piece is at most N-1 for
/// the canonical family); `range` the support half-width; `jump_values`
/// holds one value per breakpoint, the average of the two lateral limits.
struct PiecewiseKernel {
    int order = 1;
    double range = 0.0;
    std::vector<KernelPiece> pieces;     // sorted, tiling [-range, range]
    std::vector<double> jump_values;     // pieces.size()+1 entries

    std::size_t breakpoint_count() const { return pieces.size() + 1; }
    double breakpoint(std::size_t i) const {
        return i == 0 ? pieces.front().lo : pieces[i - 1].hi;
    }

    /// Kernel value; at breakpoints returns the stored midpoint value,
    /// outside the support returns 0.
    double value_at(double u) const {
        const double tol = 1e-12 * std::max(1.0, range);
        for (std::size_t i = 0; i < breakpoint_count(); ++i)
            if (std::abs(u - breakpoint(i)) <= tol) return jump_values[i];
        if (u < pieces.front().lo || u > pieces.back().hi) return 0.0;
        // interior: locate the piece
        auto it = std::upper_bound(pieces.begin(), pieces.end(), u,
                                   [](double v, const KernelPiece& p) { return v < p.hi; });
        if (it == pieces.end()) it = pieces.end() - 1;
        return it->value(u);
    }

    /// Exact integral over the support (term-wise in local coordinates).
    double integral() const {
        double acc = 0.0;
        for (const auto& p : pieces) {
            const double width = p.width();
            double piece = 0.0, pw = width;
            for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
                piece += p.coeffs[j] * pw / double(j + 1);
                pw *= width;
            }
            acc += piece;
        }
        return acc;
    }
};

namespace kernel_detail {

// lateral limit of the kernel polynomial on the given side of breakpoint i
inline double lateral_limit(const PiecewiseKernel& k, std::size_t i, bool from_right) {
    if (from_right) {
        if (i >= k.pieces.size()) return 0.0;
        return k.pieces[i].coeffs.empty() ? 0.0 : k.pieces[i].coeffs.front();
    }
    if (i == 0) return 0.0;
    return poly::eval(k.pieces[i - 1].coeffs, k.pieces[i - 1].width());
}

inline void assign_jump_values(PiecewiseKernel& k) {
    k.jump_values.resize(k.breakpoint_count());
    for (std::size_t i = 0; i < k.breakpoint_count(); ++i)
        k.jump_values[i] = 0.5 * (lateral_limit(k, i, false) + lateral_limit(k, i, true));
}

} // namespace kernel_detail

/// The box kernel: 1/(2e) on (-e, e), the lateral-limit average 1/(4e) at
/// the breakpoints, 0 outside.
inline PiecewiseKernel first_order_kernel(double eps) {
    if (!(eps > 0)) throw std::invalid_argument("first_order_kernel: range must be positive");
    PiecewiseKernel k;
    k.order = 1;
    k.range = eps;
    k.pieces.push_back({-eps, eps, {1.0 / (2.0 * eps)}});
    kernel_detail::assign_jump_values(k);
    return k;
}

/// Exact convolution of two piecewise-polynomial kernels. The support of the
/// result is the sum of the supports; breakpoints are sums of input
/// breakpoints. Each output piece is assembled from the bivariate
/// antiderivative of a_i(v) * b_j(u - v) with bounds that are either piece
/// edges or linear in u.
inline PiecewiseKernel convolve(const PiecewiseKernel& a, const PiecewiseKernel& b) {
    if (a.pieces.empty() || b.pieces.empty())
        throw std::invalid_argument("convolve: empty kernel");
    const double scale = a.range + b.range;
    const double tol = 1e-12 * std::max(1.0, scale);

    std::vector<double> crit;
    for (std::size_t i = 0; i < a.breakpoint_count(); ++i)
        for (std::size_t j = 0; j < b.breakpoint_count(); ++j)
            crit.push_back(a.breakpoint(i) + b.breakpoint(j));
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end(),
                           [&](double x, double y) { return std::abs(x - y) <= tol; }),
               crit.end());

    PiecewiseKernel out;
    out.order = a.order + b.order;
    out.range = scale;

    // All assembly below runs in local coordinates: the output piece carries
    // tau = u - lo, the a-piece integration variable is s = v - pa.lo, and
    // the offsets entering the algebra are differences of nearby breakpoints,
    // so every intermediate stays at value scale.
    for (std::size_t c = 0; c + 1 < crit.size(); ++c) {
        const double lo = crit[c], hi = crit[c + 1];
        if (hi - lo <= tol) continue;
        const double tau_mid = 0.5 * (hi - lo);
        poly::Coeffs total;
        for (const auto& pa : a.pieces) {
            for (const auto& pb : b.pieces) {
                const double wa = pa.width();
                const double d0 = lo - pa.lo - pb.lo;  // upper linear bound offset
                const double dlo = lo - pa.lo - pb.hi; // lower linear bound offset
                const double s_lo_mid = std::max(0.0, tau_mid + dlo);
                const double s_hi_mid = std::min(wa, tau_mid + d0);
                if (s_hi_mid <= s_lo_mid) continue;

                // B(phi - s) with phi = tau + d0, as a polynomial in s whose
                // coefficients are polynomials in tau:
                //   C_r(tau) = sum_{q >= r} B_q binom(q, r) (-1)^r (tau + d0)^(q-r)
                const auto& B = pb.coeffs;
                std::vector<poly::Coeffs> C(B.size());
                for (std::size_t r = 0; r < B.size(); ++r) {
                    poly::Coeffs cr;
                    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
                    for (std::size_t q = r; q < B.size(); ++q) {
                        double binom = 1.0;
                        for (std::size_t t = 0; t < r; ++t)
                            binom = binom * double(q - t) / double(t + 1);
                        poly::add_inplace(cr, poly::shifted_power(q - r, -d0), sign * binom * B[q]);
                    }
                    C[r] = std::move(cr);
                }
                // integrand A(s) B(phi - s) = sum_t D_t(tau) s^t
                const auto& A = pa.coeffs;
                std::vector<poly::Coeffs> D(A.size() + B.size());
                for (std::size_t s = 0; s < A.size(); ++s)
                    for (std::size_t r = 0; r < C.size(); ++r)
                        poly::add_inplace(D[s + r], C[r], A[s]);

                // H(s; tau) = sum_t D_t(tau) s^(t+1)/(t+1) at both bounds;
                // a bound is a piece edge (constant) or tau + offset
                auto accumulate_bound = [&](poly::Coeffs& acc, bool is_const, double cval,
                                            double sgn) {
                    for (std::size_t t = 0; t < D.size(); ++t) {
                        if (D[t].empty()) continue;
                        const double inv = 1.0 / double(t + 1);
                        if (is_const) {
                            poly::add_inplace(acc, D[t], sgn * inv * std::pow(cval, double(t + 1)));
                        } else {
                            const auto pw = poly::shifted_power(t + 1, -cval);
                            poly::add_inplace(acc, poly::mul(D[t], pw), sgn * inv);
                        }
                    }
                };
                const bool lower_const = 0.0 >= tau_mid + dlo;
                const bool upper_const = wa <= tau_mid + d0;
                accumulate_bound(total, upper_const, upper_const ? wa : d0, +1.0);
                accumulate_bound(total, lower_const, lower_const ? 0.0 : dlo, -1.0);
            }
        }
        double mag = 0.0;
        for (double v : total) mag = std::max(mag, std::abs(v));
        poly::trim(total, 1e-13 * mag);
        out.pieces.push_back({lo, hi, std::move(total)});
    }
    kernel_detail::assign_jump_values(out);
    return out;
}

/// Order-N kernel of range eps under the constant-range convention: the
/// N-fold convolution of boxes of range eps/N. N equal sub-intervals,
/// degree N-1 pieces, C^(N-2) at interior breakpoints.
inline PiecewiseKernel order_n_kernel(int n, double eps) {
    if (n < 1) throw std::invalid_argument("order_n_kernel: order must be >= 1");
    if (!(eps > 0)) throw std::invalid_argument("order_n_kernel: range must be positive");
    const double w = eps / double(n);
    PiecewiseKernel k = first_order_kernel(w);
    const PiecewiseKernel box = first_order_kernel(w);
    for (int i = 1; i < n; ++i) k = convolve(k, box);
    return k;
}

/// Fourier multiplier of the order-N filter on mode k:
/// [sin(k eps/N)/(k eps/N)]^N, with the value 1 at k = 0 and for the
/// order-zero (identity) filter.
inline double multiplier(int n, double eps, int k) {
    if (n < 0) throw std::invalid_argument("multiplier: order must be >= 0");
    if (!(eps > 0)) throw std::invalid_argument("multiplier: range must be positive");
    if (k < 0) throw std::invalid_argument("multiplier: negative mode index");
    if (n == 0 || k == 0) return 1.0;
    const double s = sinc(double(k) * eps / double(n));
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= s;
    return out;
}

/// Truncated Fourier series of the order-N kernel on [-pi, pi]:
/// 1/(2pi) + (1/pi) sum multiplier(N, eps, k) cos(k u). Valid for
/// eps <= pi. The order-zero case is the formally divergent delta series
/// (all cosine coefficients 1/pi) and must be acknowledged by the caller.
inline FourierSeries kernel_series(int n, double eps, std::size_t k_max,
                                   bool acknowledge_divergent = false) {
    if (n < 0) throw std::invalid_argument("kernel_series: order must be >= 0");
    if (!(eps > 0)) throw std::invalid_argument("kernel_series: range must be positive");
    if (eps > std::numbers::pi)
        throw std::invalid_argument("kernel_series: range exceeds the periodic half-width pi");
    if (n == 0 && !acknowledge_divergent)
        throw std::invalid_argument(
            "kernel_series: order-zero series is divergent; pass acknowledge_divergent");
    FourierSeries s = make_series(k_max);
    s.half_mean = 1.0 / std::numbers::pi;
    for (std::size_t k = 1; k <= k_max; ++k)
        s.cos_coeffs[k - 1] = multiplier(n, eps, int(k)) / std::numbers::pi;
    return s;
}

// ---------------------------------------------------------------------------
// structural checks used by tests and the CLI self-check

/// Largest mismatch of lateral derivatives (orders 0..up_to) across interior
/// breakpoints, relative to the evaluation magnitude of the derivative (the
/// largest term of the Horner sum, which is what bounds the achievable
/// agreement when the derivative itself nearly vanishes).
inline double max_derivative_mismatch(const PiecewiseKernel& k, int up_to) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < k.breakpoint_count(); ++i) {
        poly::Coeffs left = k.pieces[i - 1].coeffs;
        poly::Coeffs right = k.pieces[i].coeffs;
        const double wl = k.pieces[i - 1].width();
        for (int d = 0; d <= up_to; ++d) {
            const double vl = poly::eval(left, wl);
            const double vr = right.empty() ? 0.0 : right.front();
            double denom = std::max({1.0, std::abs(vl), std::abs(vr)});
            double pw = 1.0;
            for (std::size_t j = 0; j < left.size(); ++j) {
                denom = std::max(denom, std::abs(left[j]) * pw);
                pw *= wl;
            }
            worst = std::max(worst, std::abs(vl - vr) / denom);
            left = poly::derivative(left);
            right = poly::derivative(right);
        }
    }
    return worst;
}

/// Coefficient-level evenness defect: each piece on [l, h] must satisfy
/// p(w) = m(h - l - w) against its mirror piece on [-h, -l]. Zero for an
/// even kernel.
inline double evenness_defect(const PiecewiseKernel& k) {
    double worst = 0.0;
    const double tol = 1e-12 * std::max(1.0, k.range);
    for (const auto& p : k.pieces) {
        const KernelPiece* m = nullptr;
        for (const auto& q : k.pieces)
            if (std::abs(q.lo + p.hi) <= tol && std::abs(q.hi + p.lo) <= tol) { m = &q; break; }
        if (!m) return std::numeric_limits<double>::infinity();
        const poly::Coeffs reflected = poly::compose_linear(m->coeffs, -1.0, p.width());
        const std::size_t deg = std::max(p.coeffs.size(), reflected.size());
        for (std::size_t j = 0; j < deg; ++j) {
            const double cj = j < p.coeffs.size() ? p.coeffs[j] : 0.0;
            const double rj = j < reflected.size() ? reflected[j] : 0.0;
            worst = std::max(worst, std::abs(rj - cj));
        }
    }
    return worst;
}

} // namespace lowpass
