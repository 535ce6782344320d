#pragma once

// The three separable boundary-value solution families (plucked string,
// rectangular-box potential, cylinder heat conduction), unfiltered and
// filtered, together with their trigonometric pair/traveling rewrites and a
// per-point partial-sum divergence diagnostic. All series run over odd modes
// k = 2j+1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowpass/kernels.hpp"

namespace lowpass {

enum class Problem { PluckedString, BoxPotential, CylinderHeat };
enum class Field { Position, Velocity, Acceleration, Potential, Ex, Ey, Temperature, FluxR, FluxTheta };

inline const char* to_string(Problem p) {
    switch (p) {
        case Problem::PluckedString: return "plucked-string";
        case Problem::BoxPotential: return "box-potential";
        case Problem::CylinderHeat: return "cylinder-heat";
    }
    return "?";
}

inline const char* to_string(Field f) {
    switch (f) {
        case Field::Position: return "position";
        case Field::Velocity: return "velocity";
        case Field::Acceleration: return "acceleration";
        case Field::Potential: return "potential";
        case Field::Ex: return "E_x";
        case Field::Ey: return "E_y";
        case Field::Temperature: return "temperature";
        case Field::FluxR: return "flux_r";
        case Field::FluxTheta: return "flux_theta";
    }
    return "?";
}

/// A validated modal solution family. `filter_range` of 0 means unfiltered;
/// for the cylinder it is the angular range. Filtering enters solely as the
/// per-mode first-order sinc factor.
struct ModalSolution {
    Problem problem = Problem::PluckedString;
    std::map<std::string, double> parameters;
    double filter_range = 0.0;
    std::size_t k_max_modes = 2048;

    double param(const std::string& name) const {
        auto it = parameters.find(name);
        if (it == parameters.end())
            throw std::invalid_argument("ModalSolution: missing parameter '" + name + "'");
        return it->second;
    }
};

struct FieldQuery {
    Field field = Field::Position;
    double p1 = 0.0; // x, x, or r
    double p2 = 0.0; // t, y, or theta
};

struct FieldSample {
    double value = 0.0;
    bool divergent_series = false; // partial sums of a divergent series
};

namespace pde_detail {

inline const std::vector<std::string>& param_names(Problem p) {
    static const std::vector<std::string> s{"h", "L", "nu"};
    static const std::vector<std::string> b{"V0", "L", "h"};
    static const std::vector<std::string> c{"u0", "r0", "cmu_kappa"};
    switch (p) {
        case Problem::PluckedString: return s;
        case Problem::BoxPotential: return b;
        default: return c;
    }
}

inline bool field_belongs(Problem p, Field f) {
    switch (p) {
        case Problem::PluckedString:
            return f == Field::Position || f == Field::Velocity || f == Field::Acceleration;
        case Problem::BoxPotential:
            return f == Field::Potential || f == Field::Ex || f == Field::Ey;
        case Problem::CylinderHeat:
            return f == Field::Temperature || f == Field::FluxR || f == Field::FluxTheta;
    }
    return false;
}

} // namespace pde_detail

/// sinh(a)/sinh(b) for a >= 0, b > 0 without overflow: the ratio is computed
/// as exp(a-b) * (1 - e^(-2a)) / (1 - e^(-2b)), which stays finite for large
/// arguments where the naive quotient overflows near a, b ~ 710.
inline double sinh_ratio(double a, double b) {
    return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

/// cosh(a)/sinh(b), same scheme.
inline double cosh_sinh_ratio(double a, double b) {
    return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (-std::expm1(-2.0 * b));
}

inline ModalSolution make_solution(Problem problem, const std::map<std::string, double>& params,
                                   double filter_range, std::size_t k_max_modes) {
    constexpr double pi = std::numbers::pi;
    ModalSolution s;
    s.problem = problem;
    s.parameters = params;
    s.filter_range = filter_range;
    s.k_max_modes = k_max_modes;
    for (const auto& name : pde_detail::param_names(problem)) {
        const double v = s.param(name);
        if (!(v > 0))
            throw std::invalid_argument("make_solution: parameter '" + name +
                                        "' must be positive, got " + std::to_string(v));
    }
    if (filter_range < 0)
        throw std::invalid_argument("make_solution: filter range must be >= 0");
    if (k_max_modes < 1) throw std::invalid_argument("make_solution: need at least one mode");
    if (problem == Problem::CylinderHeat) {
        if (filter_range >= pi / 2)
            throw std::invalid_argument("make_solution: angular range must be < pi/2");
    } else if (filter_range >= s.param("L") / 2) {
        throw std::invalid_argument("make_solution: range must be < L/2");
    }
    return s;
}

namespace pde_detail {

// per-mode filter factor: sin(pi k eps / L)/(pi k eps / L) for the Cartesian
// problems, sin(k eps)/(k eps) for the angular one; 1 when unfiltered
inline double filter_factor(const ModalSolution& s, int k) {
    if (s.filter_range == 0.0) return 1.0;
    if (s.problem == Problem::CylinderHeat) return multiplier(1, s.filter_range, k);
    return multiplier(1, std::numbers::pi * s.filter_range / s.param("L"), k);
}

inline void check_query(const ModalSolution& s, const FieldQuery& q) {
    if (!field_belongs(s.problem, q.field))
        throw std::invalid_argument(std::string("evaluate_field: field ") + to_string(q.field) +
                                    " does not belong to problem " + to_string(s.problem));
    constexpr double pi = std::numbers::pi;
    switch (s.problem) {
        case Problem::PluckedString:
            if (q.p1 < 0 || q.p1 > s.param("L"))
                throw std::invalid_argument("evaluate_field: x outside [0, L]");
            if (q.p2 < 0) throw std::invalid_argument("evaluate_field: t must be >= 0");
            break;
        case Problem::BoxPotential:
            if (q.p1 < 0 || q.p1 > s.param("L"))
                throw std::invalid_argument("evaluate_field: x outside [0, L]");
            if (q.p2 < 0 || q.p2 > s.param("h"))
                throw std::invalid_argument("evaluate_field: y outside [0, h]");
            break;
        case Problem::CylinderHeat:
            if (q.p1 < 0 || q.p1 > s.param("r0"))
                throw std::invalid_argument("evaluate_field: r outside [0, r0]");
            if (q.p2 < -pi || q.p2 > pi)
                throw std::invalid_argument("evaluate_field: theta outside [-pi, pi]");
            break;
    }
}

// The unfiltered series that genuinely diverge: string acceleration, box
// field components on the top surface, cylinder flux on the cylinder surface.
inline bool divergent_series_query(const ModalSolution& s, const FieldQuery& q) {
    if (s.filter_range > 0) return false;
    switch (s.problem) {
        case Problem::PluckedString: return q.field == Field::Acceleration;
        case Problem::BoxPotential:
            return (q.field == Field::Ex || q.field == Field::Ey) && q.p2 == s.param("h");
        case Problem::CylinderHeat:
            return (q.field == Field::FluxR || q.field == Field::FluxTheta) &&
                   q.p1 == s.param("r0");
    }
    return false;
}

} // namespace pde_detail

/// Partial sum of the cited modal series, modes ascending. Evaluating one of
/// the genuinely divergent unfiltered series requires the explicit
/// acknowledgement flag; the returned sample then carries a warning marker.
inline FieldSample evaluate_field(const ModalSolution& s, const FieldQuery& q,
                                  std::size_t modes_upto = 0,
                                  bool acknowledge_divergent = false) {
    pde_detail::check_query(s, q);
    std::size_t n = modes_upto == 0 ? s.k_max_modes : modes_upto;
    if (n > s.k_max_modes)
        throw std::invalid_argument("evaluate_field: modes_upto exceeds k_max_modes");
    FieldSample out;
    out.divergent_series = pde_detail::divergent_series_query(s, q);
    if (out.divergent_series && !acknowledge_divergent)
        throw std::invalid_argument("evaluate_field: divergent unfiltered series for " +
                                    std::string(to_string(q.field)) +
                                    "; pass acknowledge_divergent to sum it anyway");
    constexpr double pi = std::numbers::pi;
    double acc = 0.0;
    switch (s.problem) {
        case Problem::PluckedString: {
            const double h = s.param("h"), L = s.param("L"), nu = s.param("nu");
            const double x = q.p1, t = q.p2;
            for (std::size_t j = 0; j < n; ++j) {
                const int k = int(2 * j + 1);
                const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
                const double fl = pde_detail::filter_factor(s, k);
                const double qk = pi * k / L;
                const double sx = std::sin(qk * x);
                switch (q.field) {
                    case Field::Position:
                        acc += (8 * h / (pi * pi)) * sgn / (double(k) * k) * fl *
                               std::cos(qk * nu * t) * sx;
                        break;
                    case Field::Velocity:
                        acc += -(8 * h * nu / (pi * L)) * sgn / double(k) * fl *
                               std::sin(qk * nu * t) * sx;
                        break;
                    default:
                        acc += -(8 * h * nu * nu / (L * L)) * sgn * fl * std::cos(qk * nu * t) * sx;
                        break;
                }
            }
            break;
        }
        case Problem::BoxPotential: {
            const double V0 = s.param("V0"), L = s.param("L"), hb = s.param("h");
            const double x = q.p1, y = q.p2;
            for (std::size_t j = 0; j < n; ++j) {
                const int k = int(2 * j + 1);
                const double fl = pde_detail::filter_factor(s, k);
                const double qk = pi * k / L;
                switch (q.field) {
                    case Field::Potential:
                        acc += (4 * V0 / pi) / double(k) * fl * std::sin(qk * x) *
                               sinh_ratio(qk * y, qk * hb);
                        break;
                    case Field::Ex:
                        acc += -(4 * V0 / L) * fl * std::cos(qk * x) * sinh_ratio(qk * y, qk * hb);
                        break;
                    default:
                        acc += -(4 * V0 / L) * fl * std::sin(qk * x) *
                               cosh_sinh_ratio(qk * y, qk * hb);
                        break;
                }
            }
            break;
        }
        case Problem::CylinderHeat: {
            const double u0 = s.param("u0"), r0 = s.param("r0"), cmk = s.param("cmu_kappa");
            const double rho = q.p1 / r0, th = q.p2;
            double rho_km1 = 1.0; // rho^(k-1), k odd ascending (well defined at rho = 0)
            const double rho_sq = rho * rho;
            for (std::size_t j = 0; j < n; ++j) {
                const int k = int(2 * j + 1);
                const double fl = pde_detail::filter_factor(s, k);
                switch (q.field) {
                    case Field::Temperature:
                        acc += (4 * u0 / pi) / double(k) * fl * (rho * rho_km1) *
                               std::sin(k * th);
                        break;
                    case Field::FluxR:
                        acc += -(4 * cmk * u0 / (pi * r0)) * fl * rho_km1 * std::sin(k * th);
                        break;
                    default:
                        acc += -(4 * cmk * u0 / (pi * r0)) * fl * rho_km1 * std::cos(k * th);
                        break;
                }
                rho_km1 *= rho_sq;
            }
            break;
        }
    }
    out.value = acc;
    return out;
}

/// Eight-sine traveling-wave form of the filtered string acceleration. The
/// pulses launch from the plucking point, so the phase offsets sit at L/2:
/// each mode equals the modal term exactly (trig identity), while every one
/// of the eight sine series has monotone 1/k coefficients.
inline double string_acceleration_traveling(const ModalSolution& s, double x, double t,
                                            std::size_t modes_upto = 0) {
    if (s.problem != Problem::PluckedString)
        throw std::invalid_argument("string_acceleration_traveling: wrong problem");
    if (!(s.filter_range > 0))
        throw std::invalid_argument("string_acceleration_traveling: needs a filtered solution");
    const std::size_t n = modes_upto == 0 ? s.k_max_modes : modes_upto;
    constexpr double pi = std::numbers::pi;
    const double h = s.param("h"), L = s.param("L"), nu = s.param("nu");
    const double eps = s.filter_range;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const int k = int(2 * j + 1);
        auto p = [&](double phase) { return std::sin(pi * k * phase / L); };
        const double bracket = p(L / 2 + eps - nu * t - x) + p(L / 2 - eps + nu * t + x) -
                               p(L / 2 + eps + nu * t + x) - p(L / 2 - eps - nu * t - x) -
                               p(L / 2 + eps - nu * t + x) - p(L / 2 - eps + nu * t - x) +
                               p(L / 2 + eps + nu * t - x) + p(L / 2 - eps - nu * t + x);
        acc += -(h * nu * nu / (L * pi * eps)) / double(k) * bracket;
    }
    return acc;
}

/// Pair form of the filtered E_x on the top surface:
/// (2 V0 / (pi eps)) sum (1/k) [sin(pi k (x-eps)/L) - sin(pi k (x+eps)/L)].
inline double box_ex_top_pair_form(const ModalSolution& s, double x, std::size_t modes_upto = 0) {
    if (s.problem != Problem::BoxPotential)
        throw std::invalid_argument("box_ex_top_pair_form: wrong problem");
    if (!(s.filter_range > 0))
        throw std::invalid_argument("box_ex_top_pair_form: needs a filtered solution");
    const std::size_t n = modes_upto == 0 ? s.k_max_modes : modes_upto;
    constexpr double pi = std::numbers::pi;
    const double V0 = s.param("V0"), L = s.param("L");
    const double eps = s.filter_range;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const int k = int(2 * j + 1);
        acc += (2 * V0 / (pi * eps)) / double(k) *
               (std::sin(pi * k * (x - eps) / L) - std::sin(pi * k * (x + eps) / L));
    }
    return acc;
}

/// Pair form of the filtered angular heat flux on the cylinder surface:
/// (2 c mu kappa u0 / (pi r0 eps)) sum (1/k) [sin(k(th-eps)) - sin(k(th+eps))].
inline double cylinder_flux_pair_form(const ModalSolution& s, double theta,
                                      std::size_t modes_upto = 0) {
    if (s.problem != Problem::CylinderHeat)
        throw std::invalid_argument("cylinder_flux_pair_form: wrong problem");
    if (!(s.filter_range > 0))
        throw std::invalid_argument("cylinder_flux_pair_form: needs a filtered solution");
    const std::size_t n = modes_upto == 0 ? s.k_max_modes : modes_upto;
    constexpr double pi = std::numbers::pi;
    const double u0 = s.param("u0"), r0 = s.param("r0"), cmk = s.param("cmu_kappa");
    const double eps = s.filter_range;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const int k = int(2 * j + 1);
        acc += (2 * cmk * u0 / (pi * r0 * eps)) / double(k) *
               (std::sin(k * (theta - eps)) - std::sin(k * (theta + eps)));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// partial-sum divergence diagnostic

enum class ScanCurve { StringAtTime, TopSurface, CylinderSurface };

struct ScanPoint {
    double coord = 0.0;
    bool flagged = false;      // oscillation failed to decay
    double oscillation = 0.0;  // max-min of partial sums over the last half of modes
    double prev_oscillation = 0.0; // same over the preceding quarter
    double value = 0.0;        // final partial sum
};

/// Cauchy-style diagnostic along a surface curve: partial sums are tracked at
/// each grid point; the oscillation (max-min) over the last half of the modes
/// is compared with the preceding window. A point is flagged when the
/// oscillation fails to decay (ratio >= 0.8) and exceeds 1e-3 of the local
/// scale, taken as max(|final value|, median |final value| over the grid).
inline std::vector<ScanPoint> divergence_scan(const ModalSolution& s, Field field,
                                              ScanCurve curve, const std::vector<double>& grid,
                                              std::size_t modes = 8192,
                                              double curve_parameter = 0.0) {
    if (grid.size() < 2) throw std::invalid_argument("divergence_scan: need at least 2 points");
    if (modes < 8) throw std::invalid_argument("divergence_scan: need at least 8 modes");
    constexpr double pi = std::numbers::pi;

    // per-mode coefficient and coordinate trig factor along the curve
    std::vector<double> coeff(modes);
    bool use_sin = true;
    double arg_scale = 1.0;
    switch (s.problem) {
        case Problem::PluckedString: {
            if (curve != ScanCurve::StringAtTime)
                throw std::invalid_argument("divergence_scan: string uses StringAtTime");
            const double h = s.param("h"), L = s.param("L"), nu = s.param("nu");
            const double t = curve_parameter;
            arg_scale = pi / L;
            for (std::size_t j = 0; j < modes; ++j) {
                const int k = int(2 * j + 1);
                const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
                const double fl = pde_detail::filter_factor(s, k);
                const double qk = pi * k / L;
                switch (field) {
                    case Field::Position:
                        coeff[j] = (8 * h / (pi * pi)) * sgn / (double(k) * k) * fl *
                                   std::cos(qk * nu * t);
                        break;
                    case Field::Velocity:
                        coeff[j] = -(8 * h * nu / (pi * L)) * sgn / double(k) * fl *
                                   std::sin(qk * nu * t);
                        break;
                    case Field::Acceleration:
                        coeff[j] = -(8 * h * nu * nu / (L * L)) * sgn * fl * std::cos(qk * nu * t);
                        break;
                    default:
                        throw std::invalid_argument("divergence_scan: field/problem mismatch");
                }
            }
            break;
        }
        case Problem::BoxPotential: {
            if (curve != ScanCurve::TopSurface)
                throw std::invalid_argument("divergence_scan: box uses TopSurface");
            const double V0 = s.param("V0"), L = s.param("L"), hb = s.param("h");
            arg_scale = pi / L;
            for (std::size_t j = 0; j < modes; ++j) {
                const int k = int(2 * j + 1);
                const double fl = pde_detail::filter_factor(s, k);
                const double qk = pi * k / L;
                switch (field) {
                    case Field::Potential:
                        coeff[j] = (4 * V0 / pi) / double(k) * fl; // ratio = 1 at y = h
                        break;
                    case Field::Ex:
                        coeff[j] = -(4 * V0 / L) * fl;
                        use_sin = false;
                        break;
                    case Field::Ey:
                        coeff[j] = -(4 * V0 / L) * fl * cosh_sinh_ratio(qk * hb, qk * hb);
                        break;
                    default:
                        throw std::invalid_argument("divergence_scan: field/problem mismatch");
                }
            }
            break;
        }
        case Problem::CylinderHeat: {
            if (curve != ScanCurve::CylinderSurface)
                throw std::invalid_argument("divergence_scan: cylinder uses CylinderSurface");
            const double u0 = s.param("u0"), r0 = s.param("r0"), cmk = s.param("cmu_kappa");
            for (std::size_t j = 0; j < modes; ++j) {
                const int k = int(2 * j + 1);
                const double fl = pde_detail::filter_factor(s, k);
                switch (field) {
                    case Field::Temperature:
                        coeff[j] = (4 * u0 / pi) / double(k) * fl;
                        break;
                    case Field::FluxR:
                        coeff[j] = -(4 * cmk * u0 / (pi * r0)) * fl;
                        break;
                    case Field::FluxTheta:
                        coeff[j] = -(4 * cmk * u0 / (pi * r0)) * fl;
                        use_sin = false;
                        break;
                    default:
                        throw std::invalid_argument("divergence_scan: field/problem mismatch");
                }
            }
            break;
        }
    }

    std::vector<ScanPoint> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double arg0 = arg_scale * grid[g];
        double sum = 0.0;
        double mn_a = 1e300, mx_a = -1e300, mn_b = 1e300, mx_b = -1e300;
        for (std::size_t j = 0; j < modes; ++j) {
            const double a = double(2 * j + 1) * arg0;
            sum += coeff[j] * (use_sin ? std::sin(a) : std::cos(a));
            if (j >= modes / 4 && j < modes / 2) {
                mn_a = std::min(mn_a, sum);
                mx_a = std::max(mx_a, sum);
            } else if (j >= modes / 2) {
                mn_b = std::min(mn_b, sum);
                mx_b = std::max(mx_b, sum);
            }
        }
        out[g].coord = grid[g];
        out[g].value = sum;
        out[g].prev_oscillation = mx_a - mn_a;
        out[g].oscillation = mx_b - mn_b;
    }

    std::vector<double> mags(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) mags[g] = std::abs(out[g].value);
    std::nth_element(mags.begin(), mags.begin() + long(mags.size() / 2), mags.end());
    const double curve_scale = mags[mags.size() / 2];
    for (auto& p : out) {
        const double floor_ = 1e-3 * std::max(std::abs(p.value), curve_scale);
        p.flagged = floor_ > 0 && p.oscillation >= 0.8 * p.prev_oscillation &&
                    p.oscillation >= floor_;
    }
    return out;
}

/// Ramp-edge coordinates of the filtered boundary data along the scan curve;
/// the interesting diagnostic points always sit at (or next to) these.
inline std::vector<double> boundary_feature_points(const ModalSolution& s, ScanCurve curve,
                                                   double curve_parameter = 0.0) {
    constexpr double pi = std::numbers::pi;
    const double eps = s.filter_range;
    std::vector<double> pts;
    switch (curve) {
        case ScanCurve::TopSurface: {
            const double L = s.param("L");
            if (eps > 0) pts = {eps, L - eps};
            break;
        }
        case ScanCurve::CylinderSurface:
            if (eps > 0) pts = {-pi + eps, -eps, eps, pi - eps};
            break;
        case ScanCurve::StringAtTime: {
            const double L = s.param("L"), nu = s.param("nu");
            // pulse centers fold back and forth over [0, L] starting from L/2
            auto fold = [&](double x) {
                double m = std::fmod(x, 2 * L);
                if (m < 0) m += 2 * L;
                return m <= L ? m : 2 * L - m;
            };
            if (eps > 0) {
                for (double c : {fold(L / 2 + nu * curve_parameter), fold(L / 2 - nu * curve_parameter)}) {
                    for (double e : {-eps, eps}) {
                        const double p = c + e;
                        if (p >= 0 && p <= L) pts.push_back(p);
                    }
                }
            }
            break;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace lowpass
