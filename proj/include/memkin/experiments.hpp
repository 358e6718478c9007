#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memkin/kinetics.hpp"
#include "memkin/params.hpp"
#include "memkin/trace.hpp"

namespace memkin {

// Nucleation layout of one branch: centres per layer plus the raw extraction.
struct Layout {
    std::vector<double> chi;
    double a1 = 0, a2 = 0;
    std::vector<int> first_passage;
    std::vector<int> stalled;
};

// Shared per-parameter-set work: the normalised layer potentials over the theta horizon.
class Pipeline {
public:
    explicit Pipeline(const ModelParams& p);

    const ModelParams& params() const { return p_; }
    const DepthTable& depths() const { return depths_; }
    int horizon() const { return depths_.n_max; }

    // Throws ModelError on stalled layers unless lenient.
    Layout potentiation_layout(double V_write, bool lenient = false) const;
    Layout depression_layout(double V_write, bool lenient = false) const;

private:
    Layout layout(double V_m, Drive d, bool lenient) const;
    ModelParams p_;
    DepthTable depths_;
};

// Theta horizon: first passages are searched up to this level regardless of the trace length.
int theta_horizon(const ModelParams& p);

struct RunOptions {
    int stride = 1;  // evaluate every stride-th level (the last level is always included)
};

TraceResult run_potentiation(const ModelParams& p, const RunOptions& o = {});
TraceResult run_potentiation(const Pipeline& pl, const Layout& lay, double kappa, int n_max, const RunOptions& o = {});

// A negative start fraction selects the state reached by the default potentiation run.
TraceResult run_depression(const ModelParams& p, double start_fraction, const RunOptions& o = {});
TraceResult run_depression(const Pipeline& pl, const Layout& lay, double kappa, double start_fraction, int n_max,
                           const RunOptions& o = {});

TraceResult run_cycle(const ModelParams& p, int n_stop, const RunOptions& o = {});

struct LinearityReport {
    double nu_P = 0, nu_D = 0;
    double mu_P = 0, mu_D = 0;
    int n_max_P = 0, n_max_D = 0;
    bool has_P = false, has_D = false;
    bool defined_P = true, defined_D = true;  // false when mu = 0
};

LinearityReport linearity_factors(const TraceResult& t);

// Linearity factor of one monotone segment; rising selects the potentiation form, else the depression form.
// Levels may be strided; gaps are spread uniformly over their unit steps.
double linearity_factor(const std::vector<double>& level, const std::vector<double>& I, bool rising, double* mu,
                        bool* defined);

struct InterfaceReport {
    bool stalled = false;
    std::vector<int> stalled_layers;
    std::string diagnostic;
    TraceResult trace;
    double nu_P = 0, nu_P_baseline = 0, nu_ratio = 0;
    double df_spread = 0, df_spread_baseline = 0;  // max |df/mean - 1| over the middle 90%
};

InterfaceReport run_interface_scenario(const ModelParams& modified, const ModelParams& baseline,
                                       const RunOptions& o = {});

// max |df/mean(df) - 1| over the middle 90% of a unit-stride trace's f_22 sequence
double df_spread(const TraceResult& t);

struct ArrheniusResult {
    double E_a = 0;
    double attempt_frequency = 0;
    double fit_residual = 0;  // rms of log-rate residuals
    std::vector<double> temperatures;
    std::vector<int> pairs;               // lower level of each pair
    std::vector<std::vector<double>> rate;  // [pair][temperature], 1/s
    double max_pair_spread = 0;           // max over T of (max/min - 1) across pairs
};

ArrheniusResult arrhenius_rates(const ModelParams& p, const std::vector<double>& temperatures,
                                const std::vector<int>& pairs);

// Fit of log rate against 1/(k_B T) for externally supplied rates.
ArrheniusResult fit_arrhenius(const std::vector<double>& temperatures, const std::vector<std::vector<double>>& rate);

struct PhaseGrid {
    std::vector<double> rate_per_us;  // kappa^-1 per pulse width
    std::vector<double> amplitude_V;
};

PhaseGrid default_phase_grid();

struct PhaseDiagram {
    PhaseGrid grid;
    // [amplitude][rate]
    std::vector<double> nu_P, nu_D, nu_P_norm, nu_D_norm;
    std::vector<std::string> errors;  // empty string for a good cell
    double start_fraction_D = 0;

    std::size_t index(std::size_t a, std::size_t r) const { return a * grid.rate_per_us.size() + r; }
};

PhaseDiagram phase_diagram(const PhaseGrid& grid, const ModelParams& p, const RunOptions& o = {});

struct XYMap {
    int size = 0;
    std::vector<std::uint8_t> cells;  // row-major
    double target = 0;
};

XYMap synthetic_xy_map(int n, const ModelParams& p, std::uint64_t seed, int size = 64);

}  // namespace memkin
