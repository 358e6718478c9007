#include "memkin/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "memkin/error.hpp"
#include "memkin/io.hpp"
#include "memkin/nucleation.hpp"
#include "memkin/parallel.hpp"
#include "memkin/transport.hpp"

namespace memkin {

const char* mode_name(TraceMode m) {
    switch (m) {
        case TraceMode::Potentiation: return "potentiation";
        case TraceMode::Depression: return "depression";
        case TraceMode::Cycle: return "cycle";
        case TraceMode::Dc: return "dc";
    }
    return "?";
}

int theta_horizon(const ModelParams& p) { return std::max({p.n_theta, p.n_max_P, p.n_max_D}); }

Pipeline::Pipeline(const ModelParams& p) : p_(p), depths_(depth_table(p, theta_horizon(p))) {}

Layout Pipeline::layout(double V_m, Drive d, bool lenient) const {
    ThetaGrid th = theta_grid(depths_, V_m, p_, d);
    NucleationCenters c = lenient ? nucleation_centers_lenient(th) : nucleation_centers(th);
    Layout lay;
    lay.a1 = c.a1;
    lay.a2 = c.a2;
    lay.first_passage = c.first_passage;
    lay.stalled = c.stalled;
    if (c.stalled.empty()) lay.chi = line_centers(c.a1, c.a2, p_.N_z);
    return lay;
}

Layout Pipeline::potentiation_layout(double V_write, bool lenient) const {
    if (p_.center_source == CenterSource::Line) {
        Layout lay;
        lay.a1 = p_.a1;
        lay.a2 = p_.a2;
        lay.chi = line_centers(p_.a1, p_.a2, p_.N_z);
        return lay;
    }
    return layout(p_.a_m * std::abs(V_write), Drive::Forward, lenient);
}

Layout Pipeline::depression_layout(double V_write, bool lenient) const {
    if (p_.depression_centers == DepressionCenters::Mirrored) return potentiation_layout(p_.V_write_P, lenient);
    return layout(p_.a_m * std::abs(V_write), Drive::Reverse, lenient);
}

namespace {

std::vector<double> level_grid(int n_max, int stride) {
    if (stride < 1) throw ValidationError("stride must be at least 1");
    std::vector<double> lv;
    for (int n = 0; n <= n_max; n += stride) lv.push_back(n);
    if (lv.back() != n_max) lv.push_back(n_max);
    return lv;
}

// Runs the transport chain for every level; frac maps a level to the 22 fraction.
TraceResult evaluate_pulsed(const ModelParams& p, TraceMode mode, const std::vector<double>& levels,
                            const std::function<double(double)>& frac) {
    TraceResult t;
    t.mode = mode;
    t.params = p;
    const size_t count = levels.size();
    t.level = levels;
    t.current.resize(count);
    t.fractions.resize(count);
    ElectrodeKernels k = electrode_kernels(p.V_read, p);
    std::vector<ConservationStats> stats(count);
    parallel_for(count, [&](size_t i) {
        double n = levels[i];
        StateFractions f;
        f.n = n;
        f.f_22 = frac(n);
        f.f_31 = 1 - f.f_22;
        RateSet r = rate_constants(mixed_couplings_pulsed(f, p), k, p);
        OccupationVector occ;
        try {
            occ = stationary_occupations(r, p.N_z);
        } catch (const Error& e) {
            throw ModelError("transport solve failed at level " + std::to_string(static_cast<long>(n)) + ": " +
                             e.what());
        }
        CurrentReport rep = current(r, occ);
        long double sum = occ.P_TB;
        for (auto x : occ.P) sum += x;
        t.current[i] = rep.I;
        t.fractions[i] = f;
        stats[i] = {rep.max_rel_dev, static_cast<double>(std::abs(sum - 1)), std::abs(f.f_22 + f.f_31 - 1)};
    });
    for (const auto& s : stats) {
        t.conservation.max_current_dev = std::max(t.conservation.max_current_dev, s.max_current_dev);
        t.conservation.max_norm_dev = std::max(t.conservation.max_norm_dev, s.max_norm_dev);
        t.conservation.max_fraction_dev = std::max(t.conservation.max_fraction_dev, s.max_fraction_dev);
    }
    return t;
}

}  // namespace

TraceResult run_potentiation(const Pipeline& pl, const Layout& lay, double kappa, int n_max, const RunOptions& o) {
    if (lay.chi.empty()) throw ModelError("potentiation layout has stalled layers");
    SwitchCurve curve(lay.chi, kappa);
    return evaluate_pulsed(pl.params(), TraceMode::Potentiation, level_grid(n_max, o.stride),
                           [&](double n) { return curve(n); });
}

TraceResult run_potentiation(const ModelParams& p, const RunOptions& o) {
    validate(p);
    Pipeline pl(p);
    return run_potentiation(pl, pl.potentiation_layout(p.V_write_P), p.kappa_P, p.n_max_P, o);
}

TraceResult run_depression(const Pipeline& pl, const Layout& lay, double kappa, double start_fraction, int n_max,
                           const RunOptions& o) {
    if (lay.chi.empty()) throw ModelError("depression layout has stalled layers");
    DepressionCurve curve(SwitchCurve(lay.chi, kappa), start_fraction);
    return evaluate_pulsed(pl.params(), TraceMode::Depression, level_grid(n_max, o.stride),
                           [&](double n) { return curve(n); });
}

TraceResult run_depression(const ModelParams& p, double start_fraction, const RunOptions& o) {
    validate(p);
    if (!(start_fraction <= 1) || std::isnan(start_fraction))
        throw ValidationError("start fraction must lie in [0, 1], or be negative for the potentiation end state");
    Pipeline pl(p);
    if (start_fraction < 0)
        start_fraction = SwitchCurve(pl.potentiation_layout(p.V_write_P).chi, p.kappa_P)(p.n_max_P);
    return run_depression(pl, pl.depression_layout(p.V_write_D), p.kappa_D, start_fraction, p.n_max_D, o);
}

TraceResult run_cycle(const ModelParams& p, int n_stop, const RunOptions& o) {
    validate(p);
    if (n_stop < 1 || n_stop > p.n_max_P) throw ValidationError("n_stop must lie in [1, n_max_P]");
    Pipeline pl(p);
    TraceResult up = run_potentiation(pl, pl.potentiation_layout(p.V_write_P), p.kappa_P, n_stop, o);
    // the depression branch scales with how far potentiation got
    int n_down = static_cast<int>(std::lround(double(n_stop) * p.n_max_D / p.n_max_P));
    n_down = std::max(n_down, 1);
    TraceResult down = run_depression(pl, pl.depression_layout(p.V_write_D), p.kappa_D,
                                      up.fractions.back().f_22, n_down, o);
    TraceResult t = up;
    t.mode = TraceMode::Cycle;
    t.split = up.level.size();
    for (size_t i = 1; i < down.level.size(); ++i) {
        t.level.push_back(n_stop + down.level[i]);
        t.current.push_back(down.current[i]);
        StateFractions f = down.fractions[i];
        f.n = n_stop + down.level[i];
        t.fractions.push_back(f);
    }
    auto& c = t.conservation;
    c.max_current_dev = std::max(c.max_current_dev, down.conservation.max_current_dev);
    c.max_norm_dev = std::max(c.max_norm_dev, down.conservation.max_norm_dev);
    c.max_fraction_dev = std::max(c.max_fraction_dev, down.conservation.max_fraction_dev);
    return t;
}

double linearity_factor(const std::vector<double>& level, const std::vector<double>& I, bool rising, double* mu_out,
                        bool* defined) {
    if (level.size() < 2 || level.size() != I.size()) throw ValidationError("linearity needs at least two points");
    const double span = level.back() - level.front();
    const double sign = rising ? 1 : -1;
    const double mu = sign * (I.back() - I.front()) / span;
    if (mu_out) *mu_out = mu;
    if (mu == 0) {
        if (defined) *defined = false;
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (defined) *defined = true;
    double nu = 0;
    for (size_t k = 1; k < I.size(); ++k) {
        double h = level[k] - level[k - 1];
        double d = sign * (I[k] - I[k - 1]) / h - mu;
        nu += h * d * d;
    }
    return nu / mu;
}

LinearityReport linearity_factors(const TraceResult& t) {
    LinearityReport r;
    auto segment = [&](size_t lo, size_t hi, bool rising) {
        std::vector<double> lv(t.level.begin() + lo, t.level.begin() + hi);
        std::vector<double> cur(t.current.begin() + lo, t.current.begin() + hi);
        double mu = 0;
        bool def = true;
        double nu = linearity_factor(lv, cur, rising, &mu, &def);
        if (rising) {
            r.has_P = true;
            r.nu_P = nu;
            r.mu_P = mu;
            r.defined_P = def;
            r.n_max_P = static_cast<int>(lv.back() - lv.front());
        } else {
            r.has_D = true;
            r.nu_D = nu;
            r.mu_D = mu;
            r.defined_D = def;
            r.n_max_D = static_cast<int>(lv.back() - lv.front());
        }
    };
    switch (t.mode) {
        case TraceMode::Potentiation: segment(0, t.level.size(), true); break;
        case TraceMode::Depression: segment(0, t.level.size(), false); break;
        case TraceMode::Cycle:
            segment(0, t.split, true);
            segment(t.split - 1, t.level.size(), false);
            break;
        case TraceMode::Dc: throw ValidationError("linearity factors apply to pulsed traces");
    }
    return r;
}

namespace {

double spread_of(const std::vector<double>& df) {
    const size_t n = df.size();
    size_t lo = static_cast<size_t>(std::floor(0.05 * n)), hi = static_cast<size_t>(std::ceil(0.95 * n));
    hi = std::min(hi, n);
    if (hi <= lo) return 0;
    double mean = 0;
    for (size_t i = lo; i < hi; ++i) mean += df[i];
    mean /= double(hi - lo);
    if (mean == 0) return std::numeric_limits<double>::infinity();
    double worst = 0;
    for (size_t i = lo; i < hi; ++i) worst = std::max(worst, std::abs(df[i] / mean - 1));
    return worst;
}

double curve_spread(const SwitchCurve& c, int n_max) {
    std::vector<double> df(n_max);
    double prev = c(0);
    for (int n = 1; n <= n_max; ++n) {
        double cur = c(n);
        df[n - 1] = cur - prev;
        prev = cur;
    }
    return spread_of(df);
}

}  // namespace

double df_spread(const TraceResult& t) {
    std::vector<double> df;
    for (size_t k = 1; k < t.fractions.size(); ++k) {
        if (t.level[k] - t.level[k - 1] != 1) throw ValidationError("df spread needs a unit-stride trace");
        df.push_back(t.fractions[k].f_22 - t.fractions[k - 1].f_22);
    }
    return spread_of(df);
}

InterfaceReport run_interface_scenario(const ModelParams& modified, const ModelParams& baseline,
                                       const RunOptions& o) {
    validate(modified);
    validate(baseline);
    InterfaceReport rep;

    Pipeline base(baseline);
    Layout bl = base.potentiation_layout(baseline.V_write_P);
    TraceResult bt = run_potentiation(base, bl, baseline.kappa_P, baseline.n_max_P, o);
    rep.nu_P_baseline = linearity_factors(bt).nu_P;
    rep.df_spread_baseline = curve_spread(SwitchCurve(bl.chi, baseline.kappa_P), baseline.n_max_P);

    Pipeline mod(modified);
    Layout ml = mod.potentiation_layout(modified.V_write_P, true);
    if (!ml.stalled.empty()) {
        rep.stalled = true;
        rep.stalled_layers = ml.stalled;
        rep.diagnostic = std::to_string(ml.stalled.size()) + " of " + std::to_string(modified.N_z) +
                         " layers never switch: with a_T + a_B = " + format_double(modified.a_T + modified.a_B) +
                         " the film voltage is too small to clear epsilon";
        return rep;
    }
    rep.trace = run_potentiation(mod, ml, modified.kappa_P, modified.n_max_P, o);
    rep.nu_P = linearity_factors(rep.trace).nu_P;
    rep.nu_ratio = rep.nu_P / rep.nu_P_baseline;
    rep.df_spread = curve_spread(SwitchCurve(ml.chi, modified.kappa_P), modified.n_max_P);
    return rep;
}

ArrheniusResult fit_arrhenius(const std::vector<double>& temperatures, const std::vector<std::vector<double>>& rate) {
    if (temperatures.size() < 2) throw ValidationError("Arrhenius fit needs at least two temperatures");
    std::vector<double> x, y;
    for (const auto& row : rate) {
        if (row.size() != temperatures.size()) throw ValidationError("rate table does not match temperatures");
        for (size_t j = 0; j < row.size(); ++j) {
            if (!(row[j] > 0)) throw ModelError("non-positive rate in Arrhenius fit");
            x.push_back(1 / (kBoltzmannEv * temperatures[j]));
            y.push_back(std::log(row[j]));
        }
    }
    LineFit f = fit_line(x, y);
    ArrheniusResult r;
    r.E_a = -f.slope;
    r.attempt_frequency = std::exp(f.intercept);
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (f.slope * x[i] + f.intercept);
        ss += e * e;
    }
    r.fit_residual = std::sqrt(ss / double(x.size()));
    r.temperatures = temperatures;
    r.rate = rate;
    for (size_t j = 0; j < temperatures.size(); ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        for (const auto& row : rate) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        r.max_pair_spread = std::max(r.max_pair_spread, hi / lo - 1);
    }
    return r;
}

ArrheniusResult arrhenius_rates(const ModelParams& p, const std::vector<double>& temperatures,
                                const std::vector<int>& pairs) {
    validate(p);
    if (temperatures.size() < 3) throw ValidationError("Arrhenius extraction needs at least three temperatures");
    for (double T : temperatures)
        if (!(T >= 160 && T <= 294)) throw ValidationError("temperatures must lie in [160, 294] K");
    if (pairs.empty()) throw ValidationError("no level pairs given");
    for (int n : pairs)
        if (n < 0) throw ValidationError("level pairs must be non-negative");

    Pipeline pl(p);
    SwitchCurve curve(pl.potentiation_layout(p.V_write_P).chi, p.kappa_P);
    const double t_s = p.t_pulse_P * 1e-9;
    // The nucleation clock runs at r(T) = nu exp(-E_a / kT); a pulse at T advances the
    // curve by s(T) reference pulses, s(p.T) = 1.
    std::vector<std::vector<double>> rate(pairs.size(), std::vector<double>(temperatures.size()));
    for (size_t j = 0; j < temperatures.size(); ++j) {
        double s = std::exp(-p.E_a / kBoltzmannEv * (1 / temperatures[j] - 1 / p.T));
        for (size_t i = 0; i < pairs.size(); ++i) {
            double n = pairs[i];
            rate[i][j] = (curve(s * (n + 1)) - curve(s * n)) / t_s;
        }
    }
    ArrheniusResult r = fit_arrhenius(temperatures, rate);
    r.pairs = pairs;
    return r;
}

PhaseGrid default_phase_grid() {
    PhaseGrid g;
    g.rate_per_us = {0.010, 0.016, 0.020, 0.025, 0.031, 0.040, 0.050, 0.055, 0.065, 0.080};
    g.amplitude_V = {0.70, 0.75, 0.80, 0.85, 0.892, 0.90, 0.95, 1.00, 1.10, 1.22};
    return g;
}

PhaseDiagram phase_diagram(const PhaseGrid& grid, const ModelParams& p, const RunOptions& o) {
    validate(p);
    if (grid.rate_per_us.empty() || grid.amplitude_V.empty()) throw ValidationError("empty phase grid");
    for (double r : grid.rate_per_us)
        if (!(r > 0)) throw ValidationError("nucleation rates must be positive");
    for (double a : grid.amplitude_V)
        if (!(a > 0)) throw ValidationError("amplitudes must be positive");

    Pipeline pl(p);
    PhaseDiagram d;
    d.grid = grid;
    const size_t na = grid.amplitude_V.size(), nr = grid.rate_per_us.size(), cells = na * nr;
    d.nu_P.assign(cells, std::numeric_limits<double>::quiet_NaN());
    d.nu_D = d.nu_P;
    d.errors.assign(cells, "");

    // depression cells all start from the state reached by the reference potentiation
    {
        Layout ref = pl.potentiation_layout(p.V_write_P);
        d.start_fraction_D = SwitchCurve(ref.chi, p.kappa_P)(p.n_max_P);
    }

    std::vector<Layout> up(na), down(na);
    std::vector<std::string> lay_err(na);
    parallel_for(na, [&](size_t a) {
        try {
            up[a] = pl.potentiation_layout(grid.amplitude_V[a]);
            down[a] = pl.depression_layout(grid.amplitude_V[a]);
        } catch (const Error& e) {
            lay_err[a] = e.what();
        }
    });

    parallel_for(cells, [&](size_t c) {
        size_t a = c / nr, r = c % nr;
        if (!lay_err[a].empty()) {
            d.errors[c] = lay_err[a];
            return;
        }
        double rate = grid.rate_per_us[r];
        try {
            double kP = 1 / (rate * p.t_pulse_P * 1e-3);
            double kD = 1 / (rate * p.t_pulse_D * 1e-3);
            TraceResult tp = run_potentiation(pl, up[a], kP, p.n_max_P, o);
            TraceResult td = run_depression(pl, down[a], kD, d.start_fraction_D, p.n_max_D, o);
            d.nu_P[c] = linearity_factors(tp).nu_P;
            d.nu_D[c] = linearity_factors(td).nu_D;
        } catch (const Error& e) {
            d.errors[c] = e.what();
        }
    });

    auto normalise = [&](const std::vector<double>& v) {
        double mn = std::numeric_limits<double>::infinity();
        for (double x : v)
            if (std::isfinite(x) && x > 0) mn = std::min(mn, x);
        std::vector<double> out(v.size(), std::numeric_limits<double>::quiet_NaN());
        for (size_t i = 0; i < v.size(); ++i)
            if (std::isfinite(v[i]) && std::isfinite(mn)) out[i] = v[i] / mn;
        return out;
    };
    d.nu_P_norm = normalise(d.nu_P);
    d.nu_D_norm = normalise(d.nu_D);
    return d;
}

XYMap synthetic_xy_map(int n, const ModelParams& p, std::uint64_t seed, int size) {
    validate(p);
    if (n < 0 || n > p.n_max_P) throw ValidationError("level must lie in [0, n_max_P]");
    if (size < 2 || size > 4096) throw ValidationError("map size must lie in [2, 4096]");
    Pipeline pl(p);
    Layout lay = pl.potentiation_layout(p.V_write_P);
    // top-visible layer is the one at z = L; its population is rescaled to the trace span
    double chi = lay.chi.front();
    double lo = nucleation_population(0, chi, p.kappa_P), hi = nucleation_population(p.n_max_P, chi, p.kappa_P);
    double target = (nucleation_population(n, chi, p.kappa_P) - lo) / (hi - lo);
    target = std::clamp(target, 0.0, 1.0);

    XYMap m;
    m.size = size;
    m.target = target;
    const size_t total = static_cast<size_t>(size) * size;
    m.cells.assign(total, 0);
    const auto on = static_cast<size_t>(std::llround(target * double(total)));

    // domains grow from seeded nuclei: cells switch in order of distance to the nearest one
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    const int nuclei = 12;
    std::vector<double> nx(nuclei), ny(nuclei);
    for (int k = 0; k < nuclei; ++k) {
        nx[k] = uniform() * size;
        ny[k] = uniform() * size;
    }
    std::vector<std::pair<double, size_t>> order(total);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            double best = std::numeric_limits<double>::infinity();
            for (int k = 0; k < nuclei; ++k) {
                double dx = std::abs(c + 0.5 - nx[k]), dy = std::abs(r + 0.5 - ny[k]);
                dx = std::min(dx, size - dx);
                dy = std::min(dy, size - dy);
                best = std::min(best, dx * dx + dy * dy);
            }
            size_t idx = static_cast<size_t>(r) * size + c;
            // rough domain edges
            order[idx] = {std::sqrt(best) + 1.5 * uniform(), idx};
        }
    }
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i < on; ++i) m.cells[order[i].second] = 1;
    return m;
}

}  // namespace memkin
