#include "memkin/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "memkin/error.hpp"
#include "memkin/parallel.hpp"

namespace memkin {

namespace {

double free_energy(const ModelParams& p, Drive d) { return d == Drive::Forward ? p.delta_G0 : -p.delta_G0; }

// Gaussian-Fermi overlap normalised by the Gaussian mass.
double marcus_overlap(double phi, const ModelParams& p, Drive d, const QuadratureSpec& q) {
    double kT = thermal_energy(p.T);
    double center = p.E_lambda + free_energy(p, d) - phi;
    double s = 4 * p.E_lambda * kT;
    return gaussian_fermi_integral(center, s, kT, false, q) / std::sqrt(std::numbers::pi * s);
}

}  // namespace

double transfer_coupling(const ModelParams& p) { return 2 * std::numbers::pi * p.H_DA * p.H_DA / kHbarEvS; }

double electron_transfer_rate_at(double phi, const ModelParams& p, Drive d, const QuadratureSpec& q) {
    if (!(p.E_lambda > 0)) throw ValidationError("E_lambda must be positive");
    return transfer_coupling(p) * marcus_overlap(phi, p, d, q);
}

double transfer_probability_at(double phi, const ModelParams& p, Drive d, const QuadratureSpec& q,
                               bool* above_one) {
    double P = marcus_overlap(phi, p, d, q);
    if (above_one) *above_one = P > 1;
    return P > 1 ? 1.0 : P;
}

namespace {

double local_potential(double z, int n, const ModelParams& p) {
    if (!(z >= 0 && z <= p.L)) throw ValidationError("z must lie in [0, L]");
    PotentialProfile prof = potential_profile(n, p.a_m * p.V_write_P, p);
    // linear interpolation between boundary samples
    double u = z / p.L * p.N_z;
    int j = std::min(static_cast<int>(u), p.N_z - 1);
    double f = u - j;
    return (1 - f) * prof.phi[j] + f * prof.phi[j + 1];
}

}  // namespace

double electron_transfer_rate(double z, int n, const ModelParams& p) {
    return electron_transfer_rate_at(local_potential(z, n, p), p);
}

double transfer_probability(double z, int n, const ModelParams& p) {
    if (!(transfer_coupling(p) > 0)) throw ValidationError("transfer probability needs H_DA > 0");
    return transfer_probability_at(local_potential(z, n, p), p);
}

int switching_indicator(double P, double epsilon) { return P >= epsilon ? 1 : 0; }

DepthTable depth_table(const ModelParams& p, int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be non-negative");
    ScreeningSeries series(p.sigma, p.N_z);
    DepthTable t;
    t.N_z = p.N_z;
    t.n_max = n_max;
    t.depth.resize(static_cast<size_t>(n_max + 1) * p.N_z);
    parallel_for(static_cast<size_t>(n_max) + 1, [&](size_t n) {
        auto d = series.layer_depths(zeta(static_cast<double>(n), p));
        for (int i = 0; i < p.N_z; ++i) t.depth[n * p.N_z + i] = d[i];
    });
    return t;
}

double threshold_potential(const ModelParams& p, Drive d) {
    // P grows as the local potential becomes more negative; x = -phi
    auto P = [&](double x) { return transfer_probability_at(-x, p, d); };
    if (P(0) >= p.epsilon) return 0.0;
    double lo = 0, hi = 0.01;
    while (P(hi) < p.epsilon) {
        lo = hi;
        hi *= 2;
        if (hi > 100) return std::numeric_limits<double>::infinity();
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (P(mid) >= p.epsilon ? hi : lo) = mid;
    }
    return hi;
}

ThetaGrid theta_grid(const DepthTable& t, double V_m, const ModelParams& p, Drive d) {
    ThetaGrid g;
    g.N_z = t.N_z;
    g.n_max = t.n_max;
    g.epsilon = p.epsilon;
    g.bits.assign(static_cast<size_t>(t.N_z) * (t.n_max + 1), 0);
    const double xc = threshold_potential(p, d);
    const double band = 1e-9;
    for (int i = 0; i < t.N_z; ++i) {
        for (int n = 0; n <= t.n_max; ++n) {
            double x = V_m * t.at(n, i);
            int bit;
            if (std::abs(x - xc) < band)
                bit = switching_indicator(transfer_probability_at(-x, p, d), p.epsilon);
            else
                bit = x >= xc ? 1 : 0;
            g.bits[static_cast<size_t>(i) * (t.n_max + 1) + n] = static_cast<std::uint8_t>(bit);
        }
    }
    return g;
}

NucleationCenters nucleation_centers_lenient(const ThetaGrid& theta) {
    NucleationCenters c;
    c.first_passage.assign(theta.N_z, -1);
    std::vector<double> x, y;
    for (int i = 0; i < theta.N_z; ++i) {
        for (int n = 0; n <= theta.n_max; ++n) {
            if (theta.at(i, n)) {
                c.first_passage[i] = n;
                break;
            }
        }
        if (c.first_passage[i] < 0) {
            c.stalled.push_back(i + 1);
        } else {
            x.push_back(i + 1);
            y.push_back(c.first_passage[i]);
        }
    }
    if (x.size() >= 2) {
        LineFit f = fit_line(x, y);
        c.a1 = f.slope;
        c.a2 = f.intercept;
    } else {
        c.a1 = c.a2 = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

NucleationCenters nucleation_centers(const ThetaGrid& theta) {
    NucleationCenters c = nucleation_centers_lenient(theta);
    if (!c.stalled.empty())
        throw ModelError("stalled layer " + std::to_string(c.stalled.front()) + " of " + std::to_string(theta.N_z) +
                         ": theta never reaches 1 within " + std::to_string(theta.n_max) +
                         " pulses (check the interface voltage fractions a_T, a_B)");
    return c;
}

}  // namespace memkin
