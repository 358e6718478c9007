// Independent reference implementations used only by the tests.
#pragma once

#include <boost/math/special_functions/expint.hpp>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline double fermi(double E, double kT) {
    double x = E / kT;
    if (x > 0) {
        double e = std::exp(-x);
        return e / (1 + e);
    }
    return 1 / (1 + std::exp(x));
}

// Trapezoid rule over a window wide enough that both tails are negligible.
inline double gaussian_fermi(double center, double s, double kT, bool hole, int nodes) {
    double W = std::abs(center) + 12 * std::sqrt(s) + 60 * kT;
    double h = 2 * W / nodes, sum = 0;
    for (int i = 0; i <= nodes; ++i) {
        double E = -W + i * h;
        double g = std::exp(-(center + E) * (center + E) / s);
        double w = hole ? fermi(-E, kT) : fermi(E, kT);
        sum += (i == 0 || i == nodes ? 0.5 : 1.0) * g * w;
    }
    return sum * h;
}

inline constexpr double kB = 8.617333262e-5;
inline constexpr double hbar = 6.582119569e-16;

// k_ET at local potential phi, straight from the rate expression.
inline double marcus_rate(double phi, double E_lambda, double dG0, double H_DA, double T, int nodes = 400000) {
    double kT = kB * T;
    double s = 4 * E_lambda * kT;
    double gamma = 2 * std::numbers::pi * H_DA * H_DA / hbar;
    return gamma / std::sqrt(std::numbers::pi * s) * gaussian_fermi(E_lambda + dG0 - phi, s, kT, false, nodes);
}

// e^x E1(x) from the library special function, asymptotic series where e^x overflows.
inline double scaled_e1(double x) {
    if (x < 40) return std::exp(x) * boost::math::expint(1, x);
    double term = 1 / x, sum = term;
    for (int k = 1; k < 12; ++k) {
        term *= -k / x;
        sum += term;
    }
    return sum;
}

// Phi/V_m at z/L from the plain sine series, summed to M harmonics. The series enters with
// a plus sign so that full screening (F_m large) flattens the profile toward zero.
inline std::vector<double> screening_profile(double sigma, double zeta, int N, int M) {
    std::vector<double> out(N + 1);
    std::vector<double> coef(M + 1);
    for (int m = 1; m <= M; ++m) {
        double x = 2 * std::numbers::pi * std::numbers::pi * sigma * sigma * double(m) * m;
        double F = 0.5 * (sigma / zeta) * (sigma / zeta) * scaled_e1(x);
        coef[m] = F / (m * (1 + F));
    }
    for (int j = 0; j <= N; ++j) {
        double t = double(j) / N;
        // summed from the smallest terms up to limit rounding
        double s = 0;
        for (int m = M; m >= 1; --m) s += coef[m] * std::sin(m * std::numbers::pi * (1 - t));
        out[j] = -t + (2 / std::numbers::pi) * s;
    }
    out[0] = 0;
    out[N] = -1;
    return out;
}

// Rates in the order m_f, m_b, T_f, T_b, B_f, B_b.
using Rates = std::array<double, 6>;

// Master-equation generator: state 0 is the empty chain (electron in the electrodes), 1..N the sites.
inline std::vector<double> master_rhs(const Rates& k, const std::vector<double>& P) {
    const int N = static_cast<int>(P.size()) - 1;
    double mf = k[0], mb = k[1], Tf = k[2], Tb = k[3], Bf = k[4], Bb = k[5];
    std::vector<double> d(P.size(), 0.0);
    auto flow = [&](int from, int to, double rate) {
        d[from] -= rate * P[from];
        d[to] += rate * P[from];
    };
    flow(0, 1, Bf);
    flow(1, 0, Bb);
    flow(N, 0, Tf);
    flow(0, N, Tb);
    for (int i = 1; i < N; ++i) {
        flow(i, i + 1, mf);
        flow(i + 1, i, mb);
    }
    return d;
}

// Classical RK4 from the uniform state until the largest step change is below tol.
inline std::vector<double> relax(const Rates& k, int N, double tol = 1e-15) {
    double kmax = 0;
    for (double r : k) kmax = std::max(kmax, r);
    double dt = 0.2 / kmax;
    std::vector<double> P(N + 1, 1.0 / (N + 1));
    auto axpy = [](const std::vector<double>& a, const std::vector<double>& b, double h) {
        std::vector<double> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + h * b[i];
        return r;
    };
    for (long step = 0; step < 50000000; ++step) {
        auto k1 = master_rhs(k, P);
        auto k2 = master_rhs(k, axpy(P, k1, dt / 2));
        auto k3 = master_rhs(k, axpy(P, k2, dt / 2));
        auto k4 = master_rhs(k, axpy(P, k3, dt));
        double change = 0;
        for (size_t i = 0; i < P.size(); ++i) {
            double dp = dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            P[i] += dp;
            change = std::max(change, std::abs(dp));
        }
        if (change < tol) break;
    }
    return P;
}

// N = 2 chain solved by Cramer's rule: stationarity of sites 1 and 2 plus normalisation.
// Unknowns (P_TB, P_1, P_2).
inline std::array<double, 3> chain2(const Rates& k) {
    double mf = k[0], mb = k[1], Tf = k[2], Tb = k[3], Bf = k[4], Bb = k[5];
    double A[3][3] = {{1, 1, 1}, {Bf, -(Bb + mf), mb}, {Tb, mf, -(mb + Tf)}};
    double b[3] = {1, 0, 0};
    auto det = [](double M[3][3]) {
        return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    };
    double D = det(A);
    std::array<double, 3> x{};
    for (int c = 0; c < 3; ++c) {
        double M[3][3];
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j) M[r][j] = j == c ? b[r] : A[r][j];
        x[c] = det(M) / D;
    }
    return x;
}

}  // namespace oracle
