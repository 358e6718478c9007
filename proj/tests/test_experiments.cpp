#include <doctest.h>

#include <cmath>
#include <numeric>

#include "memkin/error.hpp"
#include "memkin/experiments.hpp"
#include "memkin/transport.hpp"

using namespace memkin;

TEST_SUITE("experiments") {
    TEST_CASE("linearity factor examples") {
        std::vector<double> n{0, 1, 2, 3};
        double mu = 0;
        bool def = false;
        double nu = linearity_factor(n, {0, 1, 2, 4}, true, &mu, &def);
        CHECK(def);
        CHECK(mu == doctest::Approx(4.0 / 3));
        CHECK(nu == doctest::Approx(0.5));

        CHECK(linearity_factor(n, {1, 3, 5, 7}, true, nullptr, nullptr) == doctest::Approx(0.0));
        CHECK(linearity_factor(n, {7, 5, 3, 1}, false, &mu, nullptr) == doctest::Approx(0.0));
        CHECK(mu == doctest::Approx(2.0));

        // nu scales with the current: nu(cI) = c nu(I)
        double a = linearity_factor(n, {0, 1, 2, 4}, true, nullptr, nullptr);
        double b = linearity_factor(n, {0, 3, 6, 12}, true, nullptr, nullptr);
        CHECK(b == doctest::Approx(3 * a));

        double flat = linearity_factor(n, {2, 1, 3, 2}, true, &mu, &def);
        CHECK_FALSE(def);
        CHECK(std::isnan(flat));
        CHECK_THROWS_AS(linearity_factor({0}, {1}, true, nullptr, nullptr), ValidationError);
    }

    TEST_CASE("strided traces keep the final level") {
        ModelParams p = default_params();
        RunOptions o;
        o.stride = 1000;
        TraceResult t = run_potentiation(p, o);
        CHECK(t.level.front() == 0);
        CHECK(t.level.back() == p.n_max_P);
        for (size_t k = 1; k < t.level.size(); ++k) CHECK(t.level[k] > t.level[k - 1]);
        CHECK_THROWS_AS(run_potentiation(p, RunOptions{0}), ValidationError);
    }

    TEST_CASE("depression returns close to the ground state") {
        ModelParams p = default_params();
        TraceResult up = run_potentiation(p);
        TraceResult down = run_depression(p, -1);
        CHECK(down.fractions.front().f_22 == doctest::Approx(up.fractions.back().f_22).epsilon(1e-12));
        CHECK(down.fractions.back().f_22 < 0.02);
        for (size_t k = 1; k < down.current.size(); ++k) CHECK(down.current[k] <= down.current[k - 1]);

        double slope_P = (up.current.back() - up.current.front()) / p.n_max_P;
        double slope_D = (down.current.front() - down.current.back()) / p.n_max_D;
        CHECK(slope_D / slope_P >= 0.9);
        CHECK(slope_D / slope_P <= 1.1);
    }

    TEST_CASE("depression from the ground state stays flat") {
        ModelParams p = default_params();
        RunOptions o;
        o.stride = 500;
        TraceResult t = run_depression(p, 0.0, o);
        for (double I : t.current) CHECK(I == doctest::Approx(t.current.front()).epsilon(1e-12));
        for (const auto& f : t.fractions) CHECK(f.f_22 == 0.0);
        CHECK_THROWS_AS(run_depression(p, 1.5), ValidationError);
        CHECK_THROWS_AS(run_depression(p, NAN), ValidationError);
    }

    TEST_CASE("cycle stopped midway stays as linear as the full branches") {
        ModelParams p = default_params();
        LinearityReport full_P = linearity_factors(run_potentiation(p));
        LinearityReport full_D = linearity_factors(run_depression(p, -1));
        TraceResult c = run_cycle(p, 8000);
        LinearityReport seg = linearity_factors(c);
        REQUIRE(seg.has_P);
        REQUIRE(seg.has_D);
        CHECK(seg.n_max_P == 8000);
        CHECK(seg.nu_P <= 2 * full_P.nu_P);
        CHECK(seg.nu_D <= 2 * full_D.nu_D);
        CHECK(c.level[c.split - 1] == 8000);
        CHECK(c.conservation.max_current_dev <= 1e-10);
    }

    TEST_CASE("a full-length cycle is potentiation followed by depression") {
        ModelParams p = default_params();
        RunOptions o;
        o.stride = 50;
        TraceResult c = run_cycle(p, p.n_max_P, o);
        TraceResult up = run_potentiation(p, o);
        TraceResult down = run_depression(p, -1, o);
        REQUIRE(c.split == up.level.size());
        REQUIRE(c.level.size() == up.level.size() + down.level.size() - 1);
        for (size_t k = 0; k < up.level.size(); ++k) CHECK(c.current[k] == up.current[k]);
        for (size_t k = 1; k < down.level.size(); ++k) {
            CHECK(c.level[c.split - 1 + k] == p.n_max_P + down.level[k]);
            CHECK(c.current[c.split - 1 + k] == doctest::Approx(down.current[k]).epsilon(1e-12));
        }
    }

    TEST_CASE("a one-pulse cycle has vanishing linearity factors") {
        ModelParams p = default_params();
        LinearityReport r = linearity_factors(run_cycle(p, 1));
        CHECK(r.nu_P == doctest::Approx(0.0));
        CHECK(r.nu_D == doctest::Approx(0.0));
        CHECK_THROWS_AS(run_cycle(p, 0), ValidationError);
        CHECK_THROWS_AS(run_cycle(p, p.n_max_P + 1), ValidationError);
    }

    TEST_CASE("an interface-dominated device stalls") {
        ModelParams base = default_params();
        ModelParams p = base;
        p.a_T = 0.495;
        p.a_B = 0.495;
        p.a_m = 0.01;
        InterfaceReport r = run_interface_scenario(p, base);
        CHECK(r.stalled);
        CHECK_FALSE(r.stalled_layers.empty());
        CHECK(r.diagnostic.find("never switch") != std::string::npos);
    }

    TEST_CASE("Arrhenius fit recovers a synthetic activation energy") {
        std::vector<double> T{160, 200, 240, 294};
        const double Ea = 0.134, nu0 = 3e7;
        std::vector<std::vector<double>> rate(2, std::vector<double>(T.size()));
        for (size_t j = 0; j < T.size(); ++j) {
            rate[0][j] = nu0 * std::exp(-Ea / (kBoltzmannEv * T[j]));
            rate[1][j] = 2 * rate[0][j];
        }
        ArrheniusResult r = fit_arrhenius(T, rate);
        CHECK(std::abs(r.E_a - Ea) < 1e-6);
        CHECK(r.max_pair_spread == doctest::Approx(1.0));
        CHECK_THROWS_AS(fit_arrhenius({200}, {{1.0}}), ValidationError);
        rate[0][1] = 0;
        CHECK_THROWS_AS(fit_arrhenius(T, rate), ModelError);
    }

    TEST_CASE("Arrhenius extraction validates its inputs") {
        ModelParams p = default_params();
        CHECK_THROWS_AS(arrhenius_rates(p, {150, 200, 250}, {1}), ValidationError);
        CHECK_THROWS_AS(arrhenius_rates(p, {160, 200, 300}, {1}), ValidationError);
        CHECK_THROWS_AS(arrhenius_rates(p, {160, 200}, {1}), ValidationError);
        CHECK_THROWS_AS(arrhenius_rates(p, {160, 200, 240}, {}), ValidationError);
        ArrheniusResult r = arrhenius_rates(p, {160, 200, 240, 294}, {1, 5001, 16001});
        CHECK(r.E_a > 0);
        for (const auto& row : r.rate)
            for (size_t j = 1; j < row.size(); ++j) CHECK(row[j] > row[j - 1]);
    }

    TEST_CASE("phase diagram normalisation and reproducibility") {
        ModelParams p = default_params();
        PhaseGrid g;
        g.rate_per_us = {0.016, 0.040};
        g.amplitude_V = {0.75, 0.85};
        RunOptions o;
        o.stride = 10;
        PhaseDiagram a = phase_diagram(g, p, o);
        PhaseDiagram b = phase_diagram(g, p, o);
        double mnP = INFINITY, mnD = INFINITY;
        for (size_t i = 0; i < a.nu_P.size(); ++i) {
            CHECK(a.errors[i].empty());
            CHECK(a.nu_P[i] == b.nu_P[i]);
            CHECK(a.nu_D[i] == b.nu_D[i]);
            mnP = std::min(mnP, a.nu_P_norm[i]);
            mnD = std::min(mnD, a.nu_D_norm[i]);
        }
        CHECK(mnP == 1.0);
        CHECK(mnD == 1.0);

        // coarse and fine strides agree to well within one normalised cell value
        PhaseDiagram fine = phase_diagram(g, p);
        for (size_t i = 0; i < a.nu_P.size(); ++i) {
            CHECK(a.nu_P_norm[i] == doctest::Approx(fine.nu_P_norm[i]).epsilon(0.05));
            CHECK(a.nu_D_norm[i] == doctest::Approx(fine.nu_D_norm[i]).epsilon(0.05));
        }

        PhaseGrid bad = g;
        bad.rate_per_us = {-1};
        CHECK_THROWS_AS(phase_diagram(bad, p, o), ValidationError);
    }

    TEST_CASE("phase cells that fail record their error") {
        ModelParams p = default_params();
        PhaseGrid g;
        g.rate_per_us = {0.02};
        g.amplitude_V = {0.01, 0.8};
        RunOptions o;
        o.stride = 100;
        PhaseDiagram d = phase_diagram(g, p, o);
        CHECK_FALSE(d.errors[d.index(0, 0)].empty());
        CHECK(std::isnan(d.nu_P_norm[d.index(0, 0)]));
        CHECK(d.errors[d.index(1, 0)].empty());
        CHECK(d.nu_P_norm[d.index(1, 0)] == 1.0);
    }

    TEST_CASE("synthetic XY map") {
        ModelParams p = default_params();
        XYMap zero = synthetic_xy_map(0, p, 1, 32);
        CHECK(std::accumulate(zero.cells.begin(), zero.cells.end(), 0) == 0);
        XYMap full = synthetic_xy_map(p.n_max_P, p, 1, 32);
        CHECK(std::accumulate(full.cells.begin(), full.cells.end(), 0) == 32 * 32);

        XYMap a = synthetic_xy_map(8000, p, 7), b = synthetic_xy_map(8000, p, 7), c = synthetic_xy_map(8000, p, 8);
        CHECK(a.cells == b.cells);
        CHECK(a.cells != c.cells);
        double mean = std::accumulate(a.cells.begin(), a.cells.end(), 0.0) / double(a.cells.size());
        CHECK(std::abs(mean - a.target) <= 1.0 / a.size);
        CHECK(a.target > 0);
        CHECK(a.target < 1);

        CHECK_THROWS_AS(synthetic_xy_map(-1, p, 1), ValidationError);
        CHECK_THROWS_AS(synthetic_xy_map(0, p, 1, 1), ValidationError);
    }
}
