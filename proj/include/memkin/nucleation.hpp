#pragma once

#include <vector>

namespace memkin {

enum class FractionMode { Pulsed, Dc };

struct StateFractions {
    double n = 0;  // level index (pulsed) or voltage (dc)
    FractionMode mode = FractionMode::Pulsed;
    double f_22 = 0, f_31 = 1, f_11 = 0, f_00 = 0;
};

double nucleation_population(double n, double chi, double kappa);

// Mean population over layers, the raw volumetric fraction of the 22 state.
double fraction_22(double n, const std::vector<double>& chi, double kappa);

struct Increments {
    std::vector<double> df_22, df_31;
};

Increments fraction_increment(const std::vector<StateFractions>& seq);

// chi_i = a1 * i + a2 for i = 1..N_z
std::vector<double> line_centers(double a1, double a2, int N_z);

// Switched fraction measured from the pristine film: (F(n) - F(0)) / (1 - F(0)), F = fraction_22.
class SwitchCurve {
public:
    SwitchCurve(std::vector<double> chi, double kappa);
    double operator()(double n) const;
    // Smallest n >= 0 where the curve reaches target (in [0, 1)).
    double inverse(double target) const;
    const std::vector<double>& centers() const { return chi_; }
    double kappa() const { return kappa_; }

private:
    std::vector<double> chi_;
    double kappa_;
    double f0_;
};

// Mirrored descent 1 - G(n + shift), with the shift chosen so that the value at n = 0 equals start.
class DepressionCurve {
public:
    DepressionCurve(SwitchCurve g, double start);
    double operator()(double n) const;
    double shift() const { return shift_; }

private:
    SwitchCurve g_;
    double start_;
    double shift_;
};

}  // namespace memkin
