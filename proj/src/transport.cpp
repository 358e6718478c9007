#include "memkin/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "memkin/error.hpp"

namespace memkin {

CouplingSet mixed_couplings_pulsed(const StateFractions& f, const ModelParams& p) {
    double w22 = f.f_22, w31 = f.f_31;
    return {w31 * p.gamma_m_31 + w22 * p.gamma_m_22, w31 * p.Gamma_T_31 + w22 * p.Gamma_T_22,
            w31 * p.Gamma_B_31 + w22 * p.Gamma_B_22};
}

CouplingSet mixed_couplings_dc(const StateFractions& f, const ModelParams& p) {
    if (std::abs(f.f_31 + f.f_11 + f.f_00 - 1) > 1e-12) throw ValidationError("dc fractions must sum to 1");
    return {f.f_31 * p.gamma_m_31 + f.f_11 * p.gamma_m_11 + f.f_00 * p.gamma_m_00,
            f.f_31 * p.Gamma_T_31 + f.f_11 * p.Gamma_T_11 + f.f_00 * p.Gamma_T_00,
            f.f_31 * p.Gamma_B_31 + f.f_11 * p.Gamma_B_11 + f.f_00 * p.Gamma_B_00};
}

ElectrodeKernels electrode_kernels(double V_r, const ModelParams& p, const QuadratureSpec& q) {
    if (!std::isfinite(V_r)) throw ValidationError("read voltage must be finite");
    double kT = thermal_energy(p.T);
    double s = 4 * p.u_lambda * kT;
    double norm = std::sqrt(std::numbers::pi * s);
    double u = p.u_lambda, dE = p.delta_E;
    ElectrodeKernels k;
    k.V_r = V_r;
    k.T_f = gaussian_fermi_integral(-u - dE - p.a_T * V_r, s, kT, false, q) / norm;
    k.T_b = gaussian_fermi_integral(u - dE + p.a_T * V_r, s, kT, true, q) / norm;
    k.B_f = gaussian_fermi_integral(u - dE - p.a_B * V_r, s, kT, true, q) / norm;
    k.B_b = gaussian_fermi_integral(-u - dE - p.a_B * V_r, s, kT, false, q) / norm;
    return k;
}

RateSet rate_constants(const CouplingSet& c, const ElectrodeKernels& k, const ModelParams& p) {
    double x = p.a_m * k.V_r / (p.eta * thermal_energy(p.T));
    RateSet r;
    r.K_m_f = c.gamma_m * std::exp(x);
    r.K_m_b = c.gamma_m * std::exp(-x);
    r.K_T_f = c.Gamma_T * k.T_f;
    r.K_T_b = c.Gamma_T * k.T_b;
    r.K_B_f = c.Gamma_B * k.B_f;
    r.K_B_b = c.Gamma_B * k.B_b;
    return r;
}

RateSet rate_constants(const CouplingSet& c, double V_r, const ModelParams& p) {
    return rate_constants(c, electrode_kernels(V_r, p), p);
}

OccupationVector stationary_occupations(const RateSet& r, int N) {
    if (N < 2) throw ValidationError("chain needs at least two sites");
    for (double k : {r.K_m_f, r.K_m_b, r.K_T_f, r.K_T_b, r.K_B_f, r.K_B_b})
        if (!(k >= 0) || !std::isfinite(k)) throw ModelError("rates must be finite and non-negative");
    if (r.K_m_f + r.K_m_b <= 0 || r.K_T_f + r.K_T_b <= 0 || r.K_B_f + r.K_B_b <= 0)
        throw ModelError("singular chain: a link has no positive rate");

    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const long double mf = r.K_m_f, mb = r.K_m_b, Tf = r.K_T_f, Tb = r.K_T_b, Bf = r.K_B_f, Bb = r.K_B_b;
    // unknowns: x(0) = P_TB, x(i) = P_i
    Mat A = Mat::Zero(N + 1, N + 1);
    Vec b = Vec::Zero(N + 1);
    A(1, 1) = -(Bb + mf);
    A(1, 2) = mb;
    A(1, 0) = Bf;
    for (int i = 2; i < N; ++i) {
        A(i, i - 1) = mf;
        A(i, i) = -(mb + mf);
        A(i, i + 1) = mb;
    }
    A(N, N - 1) = mf;
    A(N, N) = -(mb + Tf);
    A(N, 0) = Tb;
    // the electrode balance is implied by the others; normalisation takes its row
    A.row(0).setOnes();
    b(0) = 1;

    Eigen::PartialPivLU<Mat> lu(A);
    Vec x = lu.solve(b);
    if (!x.allFinite()) throw ModelError("singular occupation system");

    OccupationVector occ;
    occ.P_TB = x(0);
    occ.P.resize(N);
    for (int i = 0; i < N; ++i) occ.P[i] = x(i + 1);
    return occ;
}

CurrentReport current(const RateSet& r, const OccupationVector& occ) {
    const int N = static_cast<int>(occ.P.size());
    const long double e = kElementaryCharge;
    const auto& P = occ.P;
    long double I_B = e * (r.K_B_f * occ.P_TB - r.K_B_b * P[0]);
    long double I_T = e * (r.K_T_f * P[N - 1] - r.K_T_b * occ.P_TB);
    long double I_m = e * (r.K_m_f * P[N - 2] - r.K_m_b * P[N - 1]);

    // relative to |I|, with a floor far below any resolvable flux for the zero-bias case
    long double one_way = std::max({(long double)r.K_B_f * occ.P_TB, (long double)r.K_B_b * P[0],
                                    (long double)r.K_T_f * P[N - 1], (long double)r.K_m_f * P[0]});
    long double scale = std::max(std::abs(I_B), 1e-15L * e * one_way);
    long double dev = std::max(std::abs(I_T - I_B), std::abs(I_m - I_B));
    for (int i = 0; i + 1 < N; ++i) {
        long double J = e * (r.K_m_f * P[i] - r.K_m_b * P[i + 1]);
        dev = std::max(dev, std::abs(J - I_B));
    }
    CurrentReport rep;
    rep.I = static_cast<double>(I_B);
    rep.I_interior = static_cast<double>(I_m);
    rep.I_top = static_cast<double>(I_T);
    rep.max_rel_dev = scale > 0 ? static_cast<double>(dev / scale) : 0.0;
    return rep;
}

}  // namespace memkin
