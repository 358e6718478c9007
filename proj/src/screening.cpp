#include "memkin/screening.hpp"

#include <cmath>
#include <numbers>

#include "memkin/error.hpp"
#include "memkin/numerics.hpp"

namespace memkin {

double zeta(double n, const ModelParams& p) { return (p.b1 * n + p.b2) + p.c1 * std::exp(p.c2 * n); }

double fourier_coefficient(int m, double n, const ModelParams& p) {
    if (m < 1) throw ValidationError("harmonic index must be >= 1");
    double z = zeta(n, p);
    if (!(z > 0)) throw ModelError("zeta must be positive");
    double s = p.sigma / z;
    double x = 2 * std::numbers::pi * std::numbers::pi * p.sigma * p.sigma * m * m;
    return 0.5 * s * s * e1_scaled(x);
}

ScreeningSeries::ScreeningSeries(double sigma, int N_z) : sigma_(sigma), N_z_(N_z) {
    if (!(sigma > 0)) throw ValidationError("sigma must be positive");
    if (N_z < 2) throw ValidationError("N_z must be at least 2");
    const double pi = std::numbers::pi;
    g_.resize(kMaxHarmonics);
    for (int m = 1; m <= kMaxHarmonics; ++m) g_[m - 1] = e1_scaled(2 * pi * pi * sigma * sigma * double(m) * m);
    const int nb = N_z + 1;
    sin_.resize(static_cast<size_t>(kMaxHarmonics) * nb);
    for (int m = 1; m <= kMaxHarmonics; ++m)
        for (int j = 0; j < nb; ++j)
            sin_[static_cast<size_t>(m - 1) * nb + j] = std::sin(m * pi * (1 - double(j) / N_z));
}

std::vector<double> ScreeningSeries::normalized(double zeta, int m_max, int* terms_used) const {
    if (!(zeta > 0)) throw ModelError("zeta must be positive");
    const double pi = std::numbers::pi;
    const int nb = N_z_ + 1;
    // F_m -> c/m^2 for large m; the c/(m(m^2+c)) part is summed in closed form and
    // only the residual is summed term by term.
    const double c = 1 / (4 * pi * pi * zeta * zeta);
    const double a = std::sqrt(c);
    const double A = 0.5 * (sigma_ / zeta) * (sigma_ / zeta);

    std::vector<double> phi(nb, 0.0);
    for (int j = 0; j < nb; ++j) {
        double t = double(j) / N_z_;  // z/L
        double theta = pi * (1 - t);
        // sinh(a pi t) / sinh(a pi), written to avoid overflow
        double den = -std::expm1(-2 * a * pi);
        double R = den > 0 ? std::exp(-a * theta) * (-std::expm1(-2 * a * pi * t)) / den : t;
        phi[j] = -R;
    }

    const int cap = m_max > 0 ? std::min(m_max, kMaxHarmonics) : kMaxHarmonics;
    int m = 1;
    bool converged = m_max > 0;
    for (; m <= cap; ++m) {
        double F = A * g_[m - 1];
        double w = F / (m * (1 + F));
        double w0 = c / (m * (double(m) * m + c));
        double r = (2 / pi) * (w - w0);
        const double* s = &sin_[static_cast<size_t>(m - 1) * nb];
        for (int j = 0; j < nb; ++j) phi[j] += r * s[j];
        if (m_max <= 0 && m >= 4 && std::abs(r) < kTermTolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ModelError("potential series did not converge within " + std::to_string(cap) + " terms");
    phi.front() = 0.0;
    phi.back() = -1.0;
    if (terms_used) *terms_used = std::min(m, cap);
    return phi;
}

std::vector<double> layer_values(const std::vector<double>& boundary) {
    const int N = static_cast<int>(boundary.size()) - 1;
    std::vector<double> out(N);
    for (int i = 1; i <= N; ++i) out[i - 1] = 0.5 * (boundary[N - i] + boundary[N - i + 1]);
    return out;
}

std::vector<double> ScreeningSeries::layer_depths(double zeta) const {
    auto v = layer_values(normalized(zeta));
    for (double& x : v) x = -x;
    return v;
}

PotentialProfile potential_profile(int n, double V_m, const ModelParams& p, int m_max) {
    if (!std::isfinite(V_m)) throw ValidationError("V_m must be finite");
    if (n < 0) throw ValidationError("level index must be non-negative");
    ScreeningSeries series(p.sigma, p.N_z);
    PotentialProfile out;
    out.n = n;
    out.V_m = V_m;
    out.phi = series.normalized(zeta(n, p), m_max, &out.terms);
    out.z.resize(out.phi.size());
    for (size_t j = 0; j < out.phi.size(); ++j) {
        out.z[j] = p.L * double(j) / p.N_z;
        out.phi[j] *= V_m;
    }
    return out;
}

}  // namespace memkin
