#pragma once

#include <vector>

#include "memkin/nucleation.hpp"
#include "memkin/numerics.hpp"
#include "memkin/params.hpp"

namespace memkin {

struct CouplingSet {
    double gamma_m = 0, Gamma_T = 0, Gamma_B = 0;
};

struct RateSet {
    double K_m_f = 0, K_m_b = 0, K_T_f = 0, K_T_b = 0, K_B_f = 0, K_B_b = 0;
};

struct OccupationVector {
    std::vector<long double> P;  // sites 1..N
    long double P_TB = 0;
};

struct CurrentReport {
    double I = 0;           // bottom-electrode flux (A)
    double I_interior = 0;  // flux on the N-1 -> N link
    double I_top = 0;       // top-electrode flux
    double max_rel_dev = 0; // worst disagreement over all links, relative to |I|
};

CouplingSet mixed_couplings_pulsed(const StateFractions& f, const ModelParams& p);
CouplingSet mixed_couplings_dc(const StateFractions& f, const ModelParams& p);

// The four electrode integrals divided by sqrt(4 pi u kT); independent of the couplings,
// so a trace evaluates them once per read voltage.
struct ElectrodeKernels {
    double T_f = 0, T_b = 0, B_f = 0, B_b = 0;
    double V_r = 0;
};
ElectrodeKernels electrode_kernels(double V_r, const ModelParams& p, const QuadratureSpec& q = {});

RateSet rate_constants(const CouplingSet& c, const ElectrodeKernels& k, const ModelParams& p);
RateSet rate_constants(const CouplingSet& c, double V_r, const ModelParams& p);

OccupationVector stationary_occupations(const RateSet& r, int N_z);

CurrentReport current(const RateSet& r, const OccupationVector& occ);

}  // namespace memkin
