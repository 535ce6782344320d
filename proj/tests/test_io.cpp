#include <doctest.h>

#include <random>
#include <sstream>

#include "lowpass/io.hpp"

using namespace lowpass;

namespace {

FourierSeries random_series(unsigned seed, std::size_t k_max) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-5, 5);
    FourierSeries s = make_series(k_max);
    s.half_mean = u(rng);
    for (auto& c : s.cos_coeffs) c = u(rng);
    for (auto& c : s.sin_coeffs) c = u(rng);
    return s;
}

} // namespace

TEST_CASE("series JSON round trip is exact") {
    for (unsigned seed : {1u, 2u, 3u}) {
        FourierSeries s = random_series(seed, 37);
        nlohmann::json j = s;
        auto r = j.get<FourierSeries>();
        CHECK(r.half_mean == s.half_mean);
        CHECK(r.cos_coeffs == s.cos_coeffs);
        CHECK(r.sin_coeffs == s.sin_coeffs);
        CHECK(r.period_half_width == s.period_half_width);
    }
}

TEST_CASE("series CSV round trip is exact at 17 significant digits") {
    FourierSeries s = random_series(7, 64);
    std::stringstream ss;
    write_series_csv(ss, s);
    FourierSeries r = read_series_csv(ss, "mem.csv");
    CHECK(r.half_mean == s.half_mean);
    CHECK(r.cos_coeffs == s.cos_coeffs);
    CHECK(r.sin_coeffs == s.sin_coeffs);
}

TEST_CASE("samples CSV round trip") {
    auto f = sample_function([](double x) { return std::sin(2 * x) + 0.25; }, 64, -1.0, 3.0,
                             Extension::ZeroExtend);
    std::stringstream ss;
    write_samples_csv(ss, f);
    auto r = read_samples_csv(ss, Extension::ZeroExtend, "mem.csv");
    CHECK(r.samples == f.samples);
    CHECK(r.lo == doctest::Approx(f.lo).epsilon(1e-15));
    CHECK(r.hi == doctest::Approx(f.hi).epsilon(1e-12));
}

TEST_CASE("comments and headers before the data are skipped") {
    std::stringstream ss("# produced by hand\nk,alpha,beta\n0,2,0\n1,0.5,-0.25\n");
    auto s = read_series_csv(ss, "c.csv");
    CHECK(s.half_mean == 2.0);
    CHECK(s.cos_coeffs[0] == 0.5);
    CHECK(s.sin_coeffs[0] == -0.25);
}

TEST_CASE("CSV errors carry the offending line") {
    {
        std::stringstream ss("k,alpha,beta\n0,0,0\nbogus,1,2\n");
        try {
            (void)read_series_csv(ss, "bad.csv");
            FAIL("expected parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
        }
    }
    {
        std::stringstream ss("");
        CHECK_THROWS_AS((void)read_series_csv(ss, "empty.csv"), std::runtime_error);
    }
    {
        std::stringstream ss("x,f\n0,1\n1,2\n2.5,3\n");
        CHECK_THROWS_AS((void)read_samples_csv(ss, Extension::Periodic, "grid.csv"),
                        std::runtime_error);
    }
    {
        std::stringstream ss("k,alpha\n1,2\n");
        CHECK_THROWS_AS((void)read_series_csv(ss, "fields.csv"), std::runtime_error);
    }
}

TEST_CASE("scan CSV schema") {
    std::vector<ScanPoint> scan(2);
    scan[0] = {0.25, false, 1e-4, 2e-4, 3.0};
    scan[1] = {0.5, true, 0.75, 0.8, -1.0};
    std::stringstream ss;
    write_scan_csv(ss, scan);
    CHECK(ss.str() == "coord,class,oscillation\n"
                      "0.25,convergent,0.0001\n"
                      "0.5,divergent,0.75\n");
}

TEST_CASE("format_double survives a parse round trip") {
    for (double v : {1.0 / 3.0, 0.664997, -1e-17, 123456.789, 0.0})
        CHECK(std::stod(format_double(v)) == v);
}
