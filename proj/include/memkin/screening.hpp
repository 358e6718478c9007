#pragma once

#include <vector>

#include "memkin/params.hpp"

namespace memkin {

struct PotentialProfile {
    int n = 0;
    double V_m = 0;
    std::vector<double> z;    // nm, i*L/N_z for i = 0..N_z
    std::vector<double> phi;  // V
    int terms = 0;            // harmonics summed explicitly
};

double zeta(double n, const ModelParams& p);

double fourier_coefficient(int m, double n, const ModelParams& p);

// Thomas-Fermi series for one (sigma, N_z); tables are built once and shared read-only.
class ScreeningSeries {
public:
    static constexpr int kMaxHarmonics = 20000;
    static constexpr double kTermTolerance = 1e-12;

    ScreeningSeries(double sigma, int N_z);

    // Phi/V_m at the N_z + 1 layer boundaries. m_max > 0 forces a fixed truncation.
    std::vector<double> normalized(double zeta, int m_max = 0, int* terms_used = nullptr) const;

    // |Phi|/V_m per layer, index 0 is the layer touching z = L.
    std::vector<double> layer_depths(double zeta) const;

    double sigma() const { return sigma_; }
    int layers() const { return N_z_; }

private:
    double sigma_;
    int N_z_;
    std::vector<double> g_;    // e1_scaled(2 pi^2 sigma^2 m^2), index m-1
    std::vector<double> sin_;  // [m-1][j] = sin(m pi (1 - j/N_z))
};

PotentialProfile potential_profile(int n, double V_m, const ModelParams& p, int m_max = 0);

// Boundary samples to per-layer values (average of the two bounding samples), layer 1 at z = L.
std::vector<double> layer_values(const std::vector<double>& boundary);

}  // namespace memkin
