#include "memkin/memkin.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "memkin/error.hpp"
#include "memkin/experiments.hpp"
#include "memkin/io.hpp"
#include "memkin/parallel.hpp"
#include "memkin/params.hpp"
#include "memkin/quasidc.hpp"

struct memkin_params {
    memkin::ModelParams p;
};

struct memkin_trace {
    memkin::TraceResult t;
};

struct memkin_phase {
    memkin::PhaseDiagram d;
};

namespace {

thread_local std::string t_last_error;

memkin_status fail(memkin_status s, const std::string& msg) {
    t_last_error = msg;
    return s;
}

template <class F>
memkin_status guarded(F&& f) {
    try {
        t_last_error.clear();
        f();
        return MEMKIN_OK;
    } catch (const memkin::ParseError& e) {
        return fail(MEMKIN_ERR_PARSE, e.what());
    } catch (const memkin::ValidationError& e) {
        return fail(MEMKIN_ERR_VALIDATION, e.what());
    } catch (const memkin::ModelError& e) {
        return fail(MEMKIN_ERR_MODEL, e.what());
    } catch (const memkin::Error& e) {
        return fail(MEMKIN_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MEMKIN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MEMKIN_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) throw memkin::ValidationError(what);
}

memkin_trace* wrap(memkin::TraceResult&& t) { return new memkin_trace{std::move(t)}; }

}  // namespace

extern "C" {

const char* memkin_version(void) { return "1.0.0"; }

const char* memkin_last_error(void) { return t_last_error.c_str(); }

void memkin_string_free(char* s) { std::free(s); }

void memkin_set_threads(int n) { memkin::set_thread_count(n); }

memkin_status memkin_params_defaults(memkin_params** out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = new memkin_params{memkin::default_params()};
    });
}

memkin_status memkin_params_parse(const char* text, memkin_params** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new memkin_params{memkin::load_params(text)};
    });
}

memkin_status memkin_params_load(const char* path, memkin_params** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new memkin_params{memkin::load_params_file(path)};
    });
}

memkin_status memkin_params_clone(const memkin_params* p, memkin_params** out) {
    return guarded([&] {
        require(p && out, "null argument");
        *out = new memkin_params{p->p};
    });
}

void memkin_params_free(memkin_params* p) { delete p; }

memkin_status memkin_params_set(memkin_params* p, const char* key, const char* value) {
    return guarded([&] {
        require(p && key && value, "null argument");
        memkin::set_value(p->p, key, value);
    });
}

memkin_status memkin_params_get(const memkin_params* p, const char* key, double* out) {
    return guarded([&] {
        require(p && key && out, "null argument");
        *out = memkin::get_value(p->p, key);
    });
}

memkin_status memkin_params_validate(const memkin_params* p, char** warnings) {
    return guarded([&] {
        require(p, "null argument");
        auto w = memkin::validate(p->p);
        if (warnings) {
            std::string s;
            for (const auto& x : w) s += x + "\n";
            *warnings = dup(s);
        }
    });
}

memkin_status memkin_params_serialize(const memkin_params* p, char** out) {
    return guarded([&] {
        require(p && out, "null argument");
        *out = dup(memkin::serialize(p->p));
    });
}

memkin_status memkin_params_to_json(const memkin_params* p, char** out) {
    return guarded([&] {
        require(p && out, "null argument");
        nlohmann::ordered_json j;
        std::string text = memkin::serialize(p->p);
        // serialize() is the canonical form; numbers become JSON numbers
        size_t pos = 0;
        while (pos < text.size()) {
            size_t nl = text.find('\n', pos);
            std::string line = text.substr(pos, nl - pos);
            pos = nl + 1;
            size_t eq = line.find(" = ");
            std::string key = line.substr(0, eq), val = line.substr(eq + 3);
            char* end = nullptr;
            double d = std::strtod(val.c_str(), &end);
            if (end && *end == '\0' && !val.empty())
                j[key] = d;
            else if (val == "true" || val == "false")
                j[key] = val == "true";
            else
                j[key] = val;
        }
        *out = dup(j.dump(2));
    });
}

double memkin_thermal_energy(double T) {
    try {
        return memkin::thermal_energy(T);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return 0.0 / 0.0;
    }
}

memkin_status memkin_layout(const memkin_params* p, double V_write, int depression, memkin_layout_info* info,
                            int* first_passage) {
    return guarded([&] {
        require(p && info, "null argument");
        memkin::validate(p->p);
        memkin::Pipeline pl(p->p);
        memkin::Layout lay = depression ? pl.depression_layout(V_write, true) : pl.potentiation_layout(V_write, true);
        info->a1 = lay.a1;
        info->a2 = lay.a2;
        info->n_layers = p->p.N_z;
        info->n_stalled = static_cast<int>(lay.stalled.size());
        if (first_passage)
            for (int i = 0; i < p->p.N_z; ++i)
                first_passage[i] = lay.first_passage.empty() ? -1 : lay.first_passage[i];
    });
}

memkin_status memkin_run_potentiation(const memkin_params* p, int stride, memkin_trace** out) {
    return guarded([&] {
        require(p && out, "null argument");
        *out = wrap(memkin::run_potentiation(p->p, {stride}));
    });
}

memkin_status memkin_run_depression(const memkin_params* p, double start_fraction, int stride, memkin_trace** out) {
    return guarded([&] {
        require(p && out, "null argument");
        *out = wrap(memkin::run_depression(p->p, start_fraction, {stride}));
    });
}

memkin_status memkin_run_cycle(const memkin_params* p, int n_stop, int stride, memkin_trace** out) {
    return guarded([&] {
        require(p && out, "null argument");
        *out = wrap(memkin::run_cycle(p->p, n_stop, {stride}));
    });
}

memkin_status memkin_dc_sweep(const memkin_params* p, double V_start, double V_stop, double V_step,
                              memkin_trace** out) {
    return guarded([&] {
        require(p && out, "null argument");
        memkin::validate(p->p);
        memkin::SweepSpec s;
        s.V_start = V_start;
        s.V_stop = V_stop;
        s.V_step = V_step;
        *out = wrap(memkin::dc_sweep(s, p->p));
    });
}

void memkin_trace_free(memkin_trace* t) { delete t; }

size_t memkin_trace_length(const memkin_trace* t) { return t ? t->t.level.size() : 0; }

memkin_mode memkin_trace_mode(const memkin_trace* t) {
    switch (t->t.mode) {
        case memkin::TraceMode::Potentiation: return MEMKIN_POTENTIATION;
        case memkin::TraceMode::Depression: return MEMKIN_DEPRESSION;
        case memkin::TraceMode::Cycle: return MEMKIN_CYCLE;
        case memkin::TraceMode::Dc: return MEMKIN_DC;
    }
    return MEMKIN_POTENTIATION;
}

size_t memkin_trace_split(const memkin_trace* t) { return t ? t->t.split : 0; }

memkin_status memkin_trace_point(const memkin_trace* t, size_t i, memkin_point* out) {
    return guarded([&] {
        require(t && out, "null argument");
        require(i < t->t.level.size(), "point index out of range");
        const auto& f = t->t.fractions[i];
        *out = {t->t.level[i], t->t.current[i], f.f_22, f.f_31, f.f_11, f.f_00};
    });
}

memkin_status memkin_trace_linearity(const memkin_trace* t, memkin_linearity* out) {
    return guarded([&] {
        require(t && out, "null argument");
        memkin::LinearityReport r = memkin::linearity_factors(t->t);
        *out = {r.nu_P, r.nu_D, r.mu_P, r.mu_D, r.n_max_P, r.n_max_D, r.has_P, r.has_D, r.defined_P, r.defined_D};
    });
}

memkin_status memkin_trace_conservation(const memkin_trace* t, memkin_conservation* out) {
    return guarded([&] {
        require(t && out, "null argument");
        const auto& c = t->t.conservation;
        *out = {c.max_current_dev, c.max_norm_dev, c.max_fraction_dev};
    });
}

memkin_status memkin_trace_params(const memkin_trace* t, memkin_params** out) {
    return guarded([&] {
        require(t && out, "null argument");
        *out = new memkin_params{t->t.params};
    });
}

memkin_status memkin_trace_svg(const memkin_trace* t, int log_y, char** out) {
    return guarded([&] {
        require(t && out, "null argument");
        const auto& tr = t->t;
        memkin::Series s{memkin::mode_name(tr.mode), tr.level, tr.current};
        bool dc = tr.mode == memkin::TraceMode::Dc;
        *out = dup(memkin::svg_line_plot({s}, std::string("memkin ") + memkin::mode_name(tr.mode),
                                         dc ? "V (V)" : "pulse n", "current (A)", log_y != 0));
    });
}

memkin_status memkin_interface_scenario(const memkin_params* modified, const memkin_params* baseline, int stride,
                                        memkin_interface_report* out) {
    return guarded([&] {
        require(modified && baseline && out, "null argument");
        memkin::InterfaceReport r = memkin::run_interface_scenario(modified->p, baseline->p, {stride});
        out->stalled = r.stalled;
        out->n_stalled = static_cast<int>(r.stalled_layers.size());
        out->nu_P = r.nu_P;
        out->nu_P_baseline = r.nu_P_baseline;
        out->nu_ratio = r.nu_ratio;
        out->df_spread = r.df_spread;
        out->df_spread_baseline = r.df_spread_baseline;
        std::snprintf(out->diagnostic, sizeof out->diagnostic, "%s", r.diagnostic.c_str());
    });
}

memkin_status memkin_arrhenius(const memkin_params* p, const double* temperatures, size_t n_temps, const int* pairs,
                               size_t n_pairs, memkin_arrhenius_result* out, double* rates) {
    return guarded([&] {
        require(p && temperatures && pairs && out, "null argument");
        std::vector<double> T(temperatures, temperatures + n_temps);
        std::vector<int> P(pairs, pairs + n_pairs);
        memkin::ArrheniusResult r = memkin::arrhenius_rates(p->p, T, P);
        *out = {r.E_a, r.attempt_frequency, r.fit_residual, r.max_pair_spread};
        if (rates)
            for (size_t i = 0; i < n_pairs; ++i)
                for (size_t j = 0; j < n_temps; ++j) rates[i * n_temps + j] = r.rate[i][j];
    });
}

memkin_status memkin_phase_diagram(const memkin_params* p, const double* rates_per_us, size_t n_rates,
                                   const double* amplitudes_V, size_t n_amplitudes, int stride, memkin_phase** out) {
    return guarded([&] {
        require(p && out, "null argument");
        memkin::PhaseGrid g = memkin::default_phase_grid();
        if (rates_per_us) g.rate_per_us.assign(rates_per_us, rates_per_us + n_rates);
        if (amplitudes_V) g.amplitude_V.assign(amplitudes_V, amplitudes_V + n_amplitudes);
        *out = new memkin_phase{memkin::phase_diagram(g, p->p, {stride})};
    });
}

void memkin_phase_free(memkin_phase* d) { delete d; }

void memkin_phase_dims(const memkin_phase* d, size_t* n_amplitudes, size_t* n_rates) {
    if (n_amplitudes) *n_amplitudes = d ? d->d.grid.amplitude_V.size() : 0;
    if (n_rates) *n_rates = d ? d->d.grid.rate_per_us.size() : 0;
}

memkin_status memkin_phase_cell_at(const memkin_phase* d, size_t a, size_t r, memkin_phase_cell* out) {
    return guarded([&] {
        require(d && out, "null argument");
        const auto& g = d->d.grid;
        require(a < g.amplitude_V.size() && r < g.rate_per_us.size(), "cell index out of range");
        size_t i = d->d.index(a, r);
        const std::string& err = d->d.errors[i];
        *out = {g.rate_per_us[r], g.amplitude_V[a], d->d.nu_P[i],      d->d.nu_D[i],
                d->d.nu_P_norm[i], d->d.nu_D_norm[i], err.empty() ? nullptr : err.c_str()};
    });
}

double memkin_phase_start_fraction(const memkin_phase* d) { return d ? d->d.start_fraction_D : 0.0; }

memkin_status memkin_xy_map(const memkin_params* p, int n, uint64_t seed, int size, unsigned char* cells,
                            double* target) {
    return guarded([&] {
        require(p && cells, "null argument");
        memkin::XYMap m = memkin::synthetic_xy_map(n, p->p, seed, size);
        std::memcpy(cells, m.cells.data(), m.cells.size());
        if (target) *target = m.target;
    });
}

memkin_status memkin_xy_map_svg(const unsigned char* cells, int size, const char* title, char** out) {
    return guarded([&] {
        require(cells && out && size > 0, "null argument");
        std::vector<double> v(static_cast<size_t>(size) * size);
        for (size_t i = 0; i < v.size(); ++i) v[i] = cells[i];
        *out = dup(memkin::svg_heatmap(v, size, size, title ? title : ""));
    });
}

}  // extern "C"
