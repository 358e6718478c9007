#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "memkin/error.hpp"
#include "memkin/transport.hpp"
#include "oracles.hpp"

using namespace memkin;

namespace {

RateSet from_array(const oracle::Rates& k) { return {k[0], k[1], k[2], k[3], k[4], k[5]}; }

double occupation_sum(const OccupationVector& o) {
    long double s = o.P_TB;
    for (long double x : o.P) s += x;
    return static_cast<double>(s);
}

}  // namespace

TEST_SUITE("transport") {
    TEST_CASE("pulsed coupling mixing") {
        ModelParams p = default_params();
        StateFractions f;
        f.f_22 = 0;
        f.f_31 = 1;
        CHECK(mixed_couplings_pulsed(f, p).gamma_m == p.gamma_m_31);
        f.f_22 = 1;
        f.f_31 = 0;
        CHECK(mixed_couplings_pulsed(f, p).gamma_m == p.gamma_m_22);
        f.f_22 = f.f_31 = 0.5;
        CouplingSet c = mixed_couplings_pulsed(f, p);
        CHECK(c.gamma_m == doctest::Approx(0.5 * (p.gamma_m_31 + p.gamma_m_22)));
        CHECK(c.Gamma_T == doctest::Approx(0.5 * (p.Gamma_T_31 + p.Gamma_T_22)));
        CHECK(c.Gamma_B == doctest::Approx(0.5 * (p.Gamma_B_31 + p.Gamma_B_22)));
    }

    TEST_CASE("dc coupling mixing") {
        ModelParams p = default_params();
        StateFractions f;
        f.mode = FractionMode::Dc;
        f.f_22 = 0;
        f.f_31 = 1;
        f.f_11 = f.f_00 = 0;
        CHECK(mixed_couplings_dc(f, p).gamma_m == p.gamma_m_31);
        f.f_31 = 0;
        f.f_00 = 1;
        CHECK(mixed_couplings_dc(f, p).gamma_m == p.gamma_m_00);
        f.f_31 = f.f_11 = f.f_00 = 1.0 / 3;
        CHECK(mixed_couplings_dc(f, p).gamma_m ==
              doctest::Approx((p.gamma_m_31 + p.gamma_m_11 + p.gamma_m_00) / 3));
        f.f_00 = 0.5;
        CHECK_THROWS_AS(mixed_couplings_dc(f, p), ValidationError);
    }

    TEST_CASE("rate constants at zero bias") {
        ModelParams p = default_params();
        CouplingSet c{3e9, 2e14, 2e14};
        RateSet r = rate_constants(c, 0.0, p);
        CHECK(r.K_m_f == c.gamma_m);
        CHECK(r.K_m_b == c.gamma_m);
        CHECK(r.K_T_f == doctest::Approx(r.K_B_b).epsilon(1e-14));
        CHECK(r.K_T_b == doctest::Approx(r.K_B_f).epsilon(1e-14));
    }

    TEST_CASE("intermolecular rate ratio") {
        ModelParams p = default_params();
        double V = p.eta * thermal_energy(p.T) / p.a_m;
        RateSet r = rate_constants({1e9, 1e14, 1e14}, V, p);
        CHECK(r.K_m_f / r.K_m_b == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
        for (double Vr : {-0.3, 0.1, 0.5}) {
            RateSet q = rate_constants({1e9, 1e14, 1e14}, Vr, p);
            CHECK(q.K_m_f / q.K_m_b ==
                  doctest::Approx(std::exp(2 * p.a_m * Vr / (p.eta * thermal_energy(p.T)))).epsilon(1e-12));
        }
    }

    TEST_CASE("electrode kernels match dense trapezoids") {
        ModelParams p = default_params();
        double kT = thermal_energy(p.T), s = 4 * p.u_lambda * kT, norm = std::sqrt(std::numbers::pi * s);
        double u = p.u_lambda, dE = p.delta_E;
        for (double V : {-0.4, 0.0, 0.1, 0.7}) {
            ElectrodeKernels k = electrode_kernels(V, p);
            auto ref = [&](double c, bool hole) { return oracle::gaussian_fermi(c, s, kT, hole, 400000) / norm; };
            CHECK(k.T_f == doctest::Approx(ref(-u - dE - p.a_T * V, false)).epsilon(1e-8));
            CHECK(k.T_b == doctest::Approx(ref(u - dE + p.a_T * V, true)).epsilon(1e-8));
            CHECK(k.B_f == doctest::Approx(ref(u - dE - p.a_B * V, true)).epsilon(1e-8));
            CHECK(k.B_b == doctest::Approx(ref(-u - dE - p.a_B * V, false)).epsilon(1e-8));
        }
    }

    TEST_CASE("symmetric chain has uniform occupation") {
        for (int N : {2, 5, 30}) {
            OccupationVector o = stationary_occupations({4, 4, 4, 4, 4, 4}, N);
            CHECK(std::abs(static_cast<double>(o.P_TB) - 1.0 / (N + 1)) < 1e-15);
            for (long double x : o.P) CHECK(std::abs(static_cast<double>(x) - 1.0 / (N + 1)) < 1e-15);
        }
    }

    TEST_CASE("two-site chain matches Cramer's rule") {
        oracle::Rates k{1, 2, 1, 2, 1, 2};
        auto ref = oracle::chain2(k);
        OccupationVector o = stationary_occupations(from_array(k), 2);
        CHECK(static_cast<double>(o.P_TB) == doctest::Approx(ref[0]).epsilon(1e-14));
        CHECK(static_cast<double>(o.P[0]) == doctest::Approx(ref[1]).epsilon(1e-14));
        CHECK(static_cast<double>(o.P[1]) == doctest::Approx(ref[2]).epsilon(1e-14));

        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.1, 10);
        for (int t = 0; t < 20; ++t) {
            oracle::Rates r{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
            auto x = oracle::chain2(r);
            OccupationVector q = stationary_occupations(from_array(r), 2);
            CHECK(static_cast<double>(q.P_TB) == doctest::Approx(x[0]).epsilon(1e-13));
            CHECK(static_cast<double>(q.P[1]) == doctest::Approx(x[2]).epsilon(1e-13));
        }
    }

    TEST_CASE("stationary solve agrees with master-equation relaxation") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> lg(std::log(0.1), std::log(10.0));
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            oracle::Rates k;
            for (double& x : k) x = std::exp(lg(rng));
            auto ref = oracle::relax(k, 5);
            OccupationVector o = stationary_occupations(from_array(k), 5);
            worst = std::max(worst, std::abs(static_cast<double>(o.P_TB) - ref[0]));
            for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(static_cast<double>(o.P[i]) - ref[i + 1]));
        }
        CHECK(worst < 1e-8);
    }

    TEST_CASE("occupations are normalised probabilities and currents are conserved") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> lg(std::log(1e3), std::log(1e15));
        for (int t = 0; t < 200; ++t) {
            RateSet r{std::exp(lg(rng)), std::exp(lg(rng)), std::exp(lg(rng)),
                      std::exp(lg(rng)), std::exp(lg(rng)), std::exp(lg(rng))};
            OccupationVector o = stationary_occupations(r, 30);
            CHECK(std::abs(occupation_sum(o) - 1) < 1e-12);
            CHECK(o.P_TB >= 0);
            CHECK(o.P_TB <= 1);
            for (long double x : o.P) {
                CHECK(x >= 0);
                CHECK(x <= 1);
            }
            // arbitrary rates can cancel to a net flux far below the one-way fluxes, so
            // agreement is measured against the largest one-way flux here
            const auto& P = o.P;
            long double flux = std::max({r.K_B_f * o.P_TB, r.K_B_b * P[0], r.K_T_f * P[29], r.K_T_b * o.P_TB});
            for (int i = 0; i + 1 < 30; ++i) flux = std::max({flux, r.K_m_f * P[i], r.K_m_b * P[i + 1]});
            long double J0 = r.K_B_f * o.P_TB - r.K_B_b * P[0];
            long double worst = std::abs(r.K_T_f * P[29] - r.K_T_b * o.P_TB - J0);
            for (int i = 0; i + 1 < 30; ++i) worst = std::max(worst, std::abs(r.K_m_f * P[i] - r.K_m_b * P[i + 1] - J0));
            CHECK(static_cast<double>(worst / flux) <= 1e-15);
        }
    }

    TEST_CASE("currents agree to 1e-10 across physical operating points") {
        ModelParams p = default_params();
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> uV(0.05, 3.0), uf(0, 1);
        for (int t = 0; t < 200; ++t) {
            double f = uf(rng);
            CouplingSet c{p.gamma_m_31 + f * (p.gamma_m_22 - p.gamma_m_31), p.Gamma_T_31 + f * (p.Gamma_T_22 - p.Gamma_T_31),
                          p.Gamma_B_31 + f * (p.Gamma_B_22 - p.Gamma_B_31)};
            RateSet r = rate_constants(c, uV(rng), p);
            CHECK(current(r, stationary_occupations(r, p.N_z)).max_rel_dev <= 1e-10);
        }
    }

    TEST_CASE("zero bias with equal electrode couplings carries no current") {
        ModelParams p = default_params();
        RateSet r = rate_constants({1e9, 1e15, 1e15}, 0.0, p);
        CurrentReport c = current(r, stationary_occupations(r, p.N_z));
        double scale = kElementaryCharge * std::max({r.K_m_f, r.K_T_f, r.K_T_b, r.K_B_f, r.K_B_b});
        CHECK(std::abs(c.I) <= 1e-12 * scale);
    }

    TEST_CASE("bias reversal in a symmetric device flips the current") {
        ModelParams p = default_params();
        CouplingSet cs{2e9, 1e15, 1e15};
        for (double V : {0.05, 0.1, 0.3}) {
            RateSet rp = rate_constants(cs, V, p), rn = rate_constants(cs, -V, p);
            double Ip = current(rp, stationary_occupations(rp, p.N_z)).I;
            double In = current(rn, stationary_occupations(rn, p.N_z)).I;
            CHECK(Ip > 0);
            CHECK(In == doctest::Approx(-Ip).epsilon(1e-9));
        }
    }

    TEST_CASE("current grows with the intermolecular coupling") {
        ModelParams p = default_params();
        ElectrodeKernels k = electrode_kernels(p.V_read, p);
        double prev = 0;
        for (double g = p.gamma_m_31; g <= p.gamma_m_22; g *= 1.5) {
            RateSet r = rate_constants({g, p.Gamma_T_31, p.Gamma_B_31}, k, p);
            double I = current(r, stationary_occupations(r, p.N_z)).I;
            CHECK(I > prev);
            prev = I;
        }
    }

    TEST_CASE("degenerate chains are rejected") {
        CHECK_THROWS_AS(stationary_occupations({0, 0, 1, 1, 1, 1}, 5), ModelError);
        CHECK_THROWS_AS(stationary_occupations({1, 1, 1, 1, -1, 1}, 5), ModelError);
        CHECK_THROWS_AS(stationary_occupations({1, 1, 1, 1, 1, 1}, 1), ValidationError);
    }
}
