#include "memkin/quasidc.hpp"

#include <cmath>

#include "memkin/error.hpp"
#include "memkin/parallel.hpp"
#include "memkin/transport.hpp"

namespace memkin {

namespace {

double logistic(double x) {
    if (x >= 0) return 1 / (1 + std::exp(-x));
    double e = std::exp(x);
    return e / (1 + e);
}

}  // namespace

StateFractions dc_fractions(double V, const ModelParams& p) {
    if (!(p.w_dc > 0)) throw ValidationError("w_dc must be positive");
    double s1 = logistic((V - p.V1) / p.w_dc);
    double s2 = logistic((V - p.V2) / p.w_dc);
    StateFractions f;
    f.mode = FractionMode::Dc;
    f.n = V;
    f.f_31 = 1 - s1;
    f.f_11 = s1 * (1 - s2);
    f.f_00 = s1 * s2;
    f.f_22 = 0;
    return f;
}

TraceResult dc_sweep(const SweepSpec& spec, const ModelParams& p) {
    if (!(spec.V_step > 0) || !(spec.V_start < spec.V_stop))
        throw ValidationError("sweep needs V_step > 0 and V_start < V_stop");
    const auto count = static_cast<size_t>(std::floor((spec.V_stop - spec.V_start) / spec.V_step + 1e-9)) + 1;
    TraceResult t;
    t.mode = TraceMode::Dc;
    t.params = p;
    t.level.resize(count);
    t.current.resize(count);
    t.fractions.resize(count);
    std::vector<ConservationStats> stats(count);
    parallel_for(count, [&](size_t k) {
        double V = spec.V_start + spec.V_step * static_cast<double>(k);
        try {
            StateFractions f = dc_fractions(V, p);
            RateSet r = rate_constants(mixed_couplings_dc(f, p), V, p);
            OccupationVector occ = stationary_occupations(r, p.N_z);
            CurrentReport rep = current(r, occ);
            long double sum = occ.P_TB;
            for (auto x : occ.P) sum += x;
            t.level[k] = V;
            t.current[k] = rep.I;
            t.fractions[k] = f;
            stats[k] = {rep.max_rel_dev, static_cast<double>(std::abs(sum - 1)),
                        std::abs(f.f_31 + f.f_11 + f.f_00 - 1)};
        } catch (const Error& e) {
            throw ModelError("dc sweep failed at V = " + std::to_string(V) + ": " + e.what());
        }
    });
    for (const auto& s : stats) {
        t.conservation.max_current_dev = std::max(t.conservation.max_current_dev, s.max_current_dev);
        t.conservation.max_norm_dev = std::max(t.conservation.max_norm_dev, s.max_norm_dev);
        t.conservation.max_fraction_dev = std::max(t.conservation.max_fraction_dev, s.max_fraction_dev);
    }
    return t;
}

}  // namespace memkin
