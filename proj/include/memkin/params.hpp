#pragma once

#include <string>
#include <vector>

namespace memkin {

inline constexpr double kBoltzmannEv = 8.617333262e-5;    // eV/K
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kHbarEvS = 6.582119569e-16;        // eV s

enum class CenterSource { Theta, Line };
enum class DepressionCenters { Independent, Mirrored };

struct ModelParams {
    // intermolecular couplings (1/s)
    double gamma_m_31, gamma_m_22, gamma_m_11, gamma_m_00;
    // electrode couplings (1/s prefactor of the Gaussian-Fermi kernel)
    double Gamma_T_31, Gamma_T_22, Gamma_T_11, Gamma_T_00;
    double Gamma_B_31, Gamma_B_22, Gamma_B_11, Gamma_B_00;

    double a_T, a_B, a_m;

    double delta_E;   // eV
    double u_lambda;  // eV
    double E_lambda;  // eV
    double delta_G0;  // eV
    double H_DA;      // eV
    double eta;
    double epsilon;
    double sigma;

    double L;  // nm
    int N_z;
    double T;  // K

    double b1, b2, c1, c2;

    double kappa_P, kappa_D;
    double a1, a2;

    double V_write_P, V_write_D;  // V
    double t_pulse_P, t_pulse_D;  // ns
    double V_read;                // V
    int n_max_P, n_max_D;
    int n_theta;  // levels searched for first passages

    double V1, V2, w_dc;  // V

    double E_a;  // eV, activation energy of the nucleation rate

    CenterSource center_source;
    DepressionCenters depression_centers;
    bool allow_coupling_order;  // accept couplings that break the 00>=22>11>31 ordering
};

ModelParams default_params();

double thermal_energy(double T);

// Parses `key = value` lines on top of default_params() and validates.
ModelParams load_params(const std::string& text);
ModelParams load_params_file(const std::string& path);

// Throws ValidationError on a hard violation; returns warnings otherwise.
std::vector<std::string> validate(const ModelParams& p);

// Config text that load_params reads back to an identical value.
std::string serialize(const ModelParams& p);

// Generic access by config key; used by the C API and the CLI.
bool has_key(const std::string& key);
double get_value(const ModelParams& p, const std::string& key);
void set_value(ModelParams& p, const std::string& key, const std::string& value);
std::vector<std::string> keys();

bool params_equal(const ModelParams& a, const ModelParams& b);

}  // namespace memkin
