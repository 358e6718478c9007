#include <doctest.h>

#include <cmath>

#include "memkin/error.hpp"
#include "memkin/numerics.hpp"
#include "memkin/screening.hpp"
#include "oracles.hpp"

using namespace memkin;

namespace {

double max_deviation_from_linear(const PotentialProfile& prof) {
    double worst = 0;
    const int N = static_cast<int>(prof.phi.size()) - 1;
    for (int j = 0; j <= N; ++j) worst = std::max(worst, std::abs(prof.phi[j] + prof.V_m * double(j) / N));
    return worst;
}

}  // namespace

TEST_SUITE("screening") {
    TEST_CASE("zeta law") {
        ModelParams p = default_params();
        CHECK(zeta(0, p) == doctest::Approx(p.b2 + p.c1).epsilon(1e-15));
        for (int n = 0; n < 20000; n += 97) CHECK(zeta(n + 1, p) > zeta(n, p));
        p.c1 = 0;
        CHECK(zeta(1000, p) == doctest::Approx(p.b1 * 1000 + p.b2).epsilon(1e-15));
    }

    TEST_CASE("fourier coefficients") {
        ModelParams p = default_params();
        p.b1 = 0;
        p.c1 = 0;
        p.b2 = 1;  // zeta = 1
        double expect = 0.5 * 0.03 * 0.03 * e1_scaled(0.5 * std::pow(2 * M_PI * 0.03, 2));
        CHECK(fourier_coefficient(1, 0, p) == doctest::Approx(expect).epsilon(1e-15));
        CHECK(fourier_coefficient(1, 0, p) == doctest::Approx(0.5 * 0.03 * 0.03 * oracle::scaled_e1(2 * M_PI * M_PI * 9e-4)).epsilon(1e-12));
        ModelParams q = default_params();
        for (int m = 1; m < 200; ++m) CHECK(fourier_coefficient(m + 1, 0, q) < fourier_coefficient(m, 0, q));
        CHECK(fourier_coefficient(3, 10000, q) < fourier_coefficient(3, 0, q));
        // F scales as zeta^-2
        p.b2 = 1e6;
        CHECK(fourier_coefficient(1, 0, p) == doctest::Approx(expect * 1e-12).epsilon(1e-13));
        CHECK_THROWS_AS(fourier_coefficient(0, 0, q), ValidationError);
    }

    TEST_CASE("boundaries are pinned") {
        ModelParams p = default_params();
        for (int n : {0, 5000, 16500, 30000}) {
            for (double V : {0.81, -0.5, 1.1}) {
                PotentialProfile prof = potential_profile(n, V, p);
                CHECK(prof.phi.front() == 0.0);
                CHECK(prof.phi.back() == -V);
                CHECK(prof.z.front() == 0.0);
                CHECK(prof.z.back() == doctest::Approx(p.L));
            }
        }
    }

    TEST_CASE("interior lies between the electrodes") {
        ModelParams p = default_params();
        for (int n = 0; n <= 30000; n += 1500) {
            PotentialProfile prof = potential_profile(n, 0.81, p);
            for (double v : prof.phi) {
                CHECK(v <= 0.0);
                CHECK(v >= -0.81);
            }
        }
    }

    TEST_CASE("vanishing coefficients give the linear profile") {
        ModelParams p = default_params();
        p.b2 = 1e9;  // sigma/zeta -> 0
        PotentialProfile prof = potential_profile(0, 1.0, p);
        for (size_t j = 0; j < prof.phi.size(); ++j)
            CHECK(prof.phi[j] == doctest::Approx(-double(j) / p.N_z).epsilon(1e-12));
    }

    TEST_CASE("matches the plain sine series") {
        ModelParams p = default_params();
        ScreeningSeries s(p.sigma, p.N_z);
        for (int n : {0, 8000, 16500}) {
            double z = zeta(n, p);
            auto ref = oracle::screening_profile(p.sigma, z, p.N_z, 1000000);
            auto got = s.normalized(z);
            for (size_t j = 0; j < ref.size(); ++j) CHECK(std::abs(got[j] - ref[j]) < 1e-8);
        }
    }

    TEST_CASE("doubling the truncation changes the profile below 1e-10") {
        ModelParams p = default_params();
        ScreeningSeries s(p.sigma, p.N_z);
        for (int n : {0, 8000, 16500, 25000}) {
            int used = 0;
            auto a = s.normalized(zeta(n, p), 0, &used);
            auto b = s.normalized(zeta(n, p), 2 * used);
            for (size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) < 1e-10);
        }
    }

    TEST_CASE("profile straightens as the level grows") {
        ModelParams p = default_params();
        double d0 = max_deviation_from_linear(potential_profile(0, 0.81, p));
        double d1 = max_deviation_from_linear(potential_profile(8000, 0.81, p));
        double d2 = max_deviation_from_linear(potential_profile(16500, 0.81, p));
        CHECK(d0 > d1);
        CHECK(d1 > d2);
    }

    TEST_CASE("layer values average adjacent boundaries from the top") {
        std::vector<double> b{0, -1, -2, -3};
        auto v = layer_values(b);
        REQUIRE(v.size() == 3);
        CHECK(v[0] == -2.5);
        CHECK(v[1] == -1.5);
        CHECK(v[2] == -0.5);
    }

    TEST_CASE("invalid inputs") {
        ModelParams p = default_params();
        CHECK_THROWS_AS(potential_profile(-1, 0.8, p), ValidationError);
        CHECK_THROWS_AS(potential_profile(0, NAN, p), ValidationError);
        CHECK_THROWS_AS(ScreeningSeries(0.0, 30), ValidationError);
        ScreeningSeries s(p.sigma, p.N_z);
        CHECK_THROWS_AS(s.normalized(-1.0), ModelError);
    }
}
