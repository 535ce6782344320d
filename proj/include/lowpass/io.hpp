#pragma once

// CSV and JSON carriers for series, samples, kernel grids and scan reports.
// CSV numbers are written with 17 significant digits so that byte-level
// comparison of outputs is meaningful.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowpass/convergence.hpp"
#include "lowpass/fourier.hpp"
#include "lowpass/kernels.hpp"
#include "lowpass/pde.hpp"

namespace lowpass {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void to_json(nlohmann::json& j, const FourierSeries& s) {
    j = nlohmann::json{{"half_mean", s.half_mean},
                       {"cos", s.cos_coeffs},
                       {"sin", s.sin_coeffs},
                       {"period_half_width", s.period_half_width}};
}

inline void from_json(const nlohmann::json& j, FourierSeries& s) {
    j.at("half_mean").get_to(s.half_mean);
    j.at("cos").get_to(s.cos_coeffs);
    j.at("sin").get_to(s.sin_coeffs);
    s.period_half_width = j.value("period_half_width", std::numbers::pi);
    check_series(s);
}

inline void to_json(nlohmann::json& j, const ConvergenceReport& r) {
    j = nlohmann::json{{"classification", to_string(r.classification)},
                       {"decay_exponent", r.decay_exponent},
                       {"tail_fraction", r.tail_fraction},
                       {"notes", r.notes}};
}

// ---------------------------------------------------------------------------
// CSV

namespace io_detail {

inline std::vector<double> parse_numeric_row(const std::string& line, const std::string& file,
                                             std::size_t lineno, std::size_t expect) {
    std::vector<double> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            while (used < cell.size() && std::isspace((unsigned char)cell[used])) ++used;
            if (used != cell.size()) throw std::invalid_argument("trailing garbage");
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error(file + ":" + std::to_string(lineno) +
                                     ": expected numeric field, got '" + cell + "'");
        }
    }
    if (out.size() != expect)
        throw std::runtime_error(file + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(expect) + " fields, got " +
                                 std::to_string(out.size()));
    return out;
}

// a leading line counts as a header only if it does not parse as numbers
inline bool looks_like_header(const std::string& line) {
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            (void)std::stod(cell, &used);
            while (used < cell.size() && std::isspace((unsigned char)cell[used])) ++used;
            if (used != cell.size()) return true;
        } catch (const std::exception&) {
            return true;
        }
    }
    return false;
}

} // namespace io_detail

/// (k, alpha_k, beta_k) rows; the k = 0 row carries alpha_0 (= half_mean).
inline void write_series_csv(std::ostream& os, const FourierSeries& s) {
    os << "k,alpha,beta\n";
    os << "0," << format_double(s.half_mean) << ",0\n";
    for (std::size_t k = 1; k <= s.k_max(); ++k)
        os << k << ',' << format_double(s.cos_coeffs[k - 1]) << ','
           << format_double(s.sin_coeffs[k - 1]) << '\n';
}

inline FourierSeries read_series_csv(std::istream& is, const std::string& file = "<series>") {
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    std::vector<std::array<double, 3>> rows;
    std::size_t k_max = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!seen_data && io_detail::looks_like_header(line)) continue;
        seen_data = true;
        auto f = io_detail::parse_numeric_row(line, file, lineno, 3);
        const double kf = f[0];
        if (kf < 0 || kf != std::floor(kf))
            throw std::runtime_error(file + ":" + std::to_string(lineno) +
                                     ": mode index must be a non-negative integer");
        rows.push_back({kf, f[1], f[2]});
        k_max = std::max(k_max, std::size_t(kf));
    }
    if (rows.empty()) throw std::runtime_error(file + ": no data rows");
    FourierSeries s = make_series(k_max);
    for (const auto& r : rows) {
        const auto k = std::size_t(r[0]);
        if (k == 0) {
            s.half_mean = r[1];
        } else {
            s.cos_coeffs[k - 1] = r[1];
            s.sin_coeffs[k - 1] = r[2];
        }
    }
    check_series(s);
    return s;
}

/// (x, f) rows on a uniform ascending grid.
inline void write_samples_csv(std::ostream& os, const SampledFunction& f) {
    os << "x,f\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << format_double(f.node(i)) << ',' << format_double(f.samples[i]) << '\n';
}

inline SampledFunction read_samples_csv(std::istream& is, Extension ext,
                                        const std::string& file = "<samples>") {
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    std::vector<double> xs, fs;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!seen_data && io_detail::looks_like_header(line)) continue;
        seen_data = true;
        auto f = io_detail::parse_numeric_row(line, file, lineno, 2);
        xs.push_back(f[0]);
        fs.push_back(f[1]);
    }
    if (xs.size() < 2) throw std::runtime_error(file + ": need at least 2 sample rows");
    const double h = xs[1] - xs[0];
    if (!(h > 0)) throw std::runtime_error(file + ": sample grid must ascend");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[0] - double(i) * h) > 1e-9 * std::max(1.0, std::abs(xs[i])))
            throw std::runtime_error(file + ":" + std::to_string(i + 2) +
                                     ": sample grid is not uniform");
    SampledFunction s;
    s.samples = std::move(fs);
    s.lo = xs[0];
    s.hi = xs[0] + h * double(xs.size());
    s.extension = ext;
    check_samples(s);
    return s;
}

/// (coord, value) rows — kernel plots and field profiles share the schema.
inline void write_profile_csv(std::ostream& os, const char* coord_name,
                              const std::vector<double>& coords,
                              const std::vector<double>& values) {
    os << coord_name << ",value\n";
    for (std::size_t i = 0; i < coords.size(); ++i)
        os << format_double(coords[i]) << ',' << format_double(values[i]) << '\n';
}

/// (coord, class, oscillation) rows of a divergence scan.
inline void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& scan) {
    os << "coord,class,oscillation\n";
    for (const auto& p : scan)
        os << format_double(p.coord) << ',' << (p.flagged ? "divergent" : "convergent") << ','
           << format_double(p.oscillation) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace lowpass
