#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memkin/numerics.hpp"
#include "memkin/params.hpp"
#include "memkin/screening.hpp"

namespace memkin {

// Direction of the redox step. Depression runs the 22 -> 31 step, whose free energy is -delta_G0.
enum class Drive { Forward, Reverse };

double transfer_coupling(const ModelParams& p);  // gamma_DA = 2 pi H_DA^2 / hbar, 1/s

// k_ET at a local potential phi (V).
double electron_transfer_rate_at(double phi, const ModelParams& p, Drive d = Drive::Forward,
                                 const QuadratureSpec& q = {});
// k_ET / gamma_DA; does not depend on H_DA.
double transfer_probability_at(double phi, const ModelParams& p, Drive d = Drive::Forward,
                               const QuadratureSpec& q = {}, bool* above_one = nullptr);

// Position z (nm) and level n with the potentiation write bias, V_m = a_m * V_write_P.
double electron_transfer_rate(double z, int n, const ModelParams& p);
double transfer_probability(double z, int n, const ModelParams& p);

int switching_indicator(double P, double epsilon);

struct ThetaGrid {
    int N_z = 0;
    int n_max = 0;
    double epsilon = 0;
    std::vector<std::uint8_t> bits;  // [layer][n], layer 0 touches z = L

    int at(int layer, int n) const { return bits[static_cast<size_t>(layer) * (n_max + 1) + n]; }
};

// Per-level |Phi|/V_m of each layer, computed once and reused for every bias.
struct DepthTable {
    int N_z = 0;
    int n_max = 0;
    std::vector<double> depth;  // [n][layer]

    double at(int n, int layer) const { return depth[static_cast<size_t>(n) * N_z + layer]; }
};

DepthTable depth_table(const ModelParams& p, int n_max);

// Smallest |Phi| at which P reaches epsilon; +inf if never reached below 100 V.
double threshold_potential(const ModelParams& p, Drive d);

ThetaGrid theta_grid(const DepthTable& t, double V_m, const ModelParams& p, Drive d = Drive::Forward);

struct NucleationCenters {
    double a1 = 0, a2 = 0;
    std::vector<int> first_passage;  // per layer, -1 when stalled
    std::vector<int> stalled;        // 1-based layer indices
};

// Throws ModelError naming the first stalled layer.
NucleationCenters nucleation_centers(const ThetaGrid& theta);
// Same extraction, reporting stalled layers instead of throwing; the line is fitted to
// the layers that switched (a1 = a2 = NaN when fewer than two did).
NucleationCenters nucleation_centers_lenient(const ThetaGrid& theta);

}  // namespace memkin
