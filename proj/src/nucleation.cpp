#include "memkin/nucleation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memkin/error.hpp"

namespace memkin {

double nucleation_population(double n, double chi, double kappa) {
    if (!(kappa > 0)) throw ValidationError("kappa must be positive");
    return std::atan((n - chi) / kappa) / std::numbers::pi + 0.5;
}

double fraction_22(double n, const std::vector<double>& chi, double kappa) {
    if (chi.empty()) throw ValidationError("no nucleation centres");
    double s = 0;
    for (double c : chi) s += nucleation_population(n, c, kappa);
    return s / chi.size();
}

Increments fraction_increment(const std::vector<StateFractions>& seq) {
    Increments out;
    for (size_t k = 1; k < seq.size(); ++k) {
        if (seq[k].n != seq[k - 1].n + 1) throw ValidationError("fractions must be ordered by level without gaps");
        double d = seq[k].f_22 - seq[k - 1].f_22;
        out.df_22.push_back(d);
        out.df_31.push_back(-d);
    }
    return out;
}

std::vector<double> line_centers(double a1, double a2, int N_z) {
    std::vector<double> chi(N_z);
    for (int i = 1; i <= N_z; ++i) chi[i - 1] = a1 * i + a2;
    return chi;
}

SwitchCurve::SwitchCurve(std::vector<double> chi, double kappa) : chi_(std::move(chi)), kappa_(kappa) {
    f0_ = fraction_22(0, chi_, kappa_);
}

double SwitchCurve::operator()(double n) const {
    return (fraction_22(n, chi_, kappa_) - f0_) / (1 - f0_);
}

double SwitchCurve::inverse(double target) const {
    if (target <= 0) return 0;
    if (!(target < 1)) throw ValidationError("switch curve never reaches 1");
    double lo = 0, hi = 1;
    while ((*this)(hi) < target) {
        lo = hi;
        hi *= 2;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        ((*this)(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

DepressionCurve::DepressionCurve(SwitchCurve g, double start) : g_(std::move(g)), start_(start) {
    if (!(start >= 0 && start <= 1)) throw ValidationError("start fraction must lie in [0, 1]");
    shift_ = start_ > 0 ? g_.inverse(1 - start_) : 0;
}

double DepressionCurve::operator()(double n) const {
    if (start_ <= 0) return 0;
    if (n == 0) return start_;
    return 1 - g_(n + shift_);
}

}  // namespace memkin
