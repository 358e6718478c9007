// memkin command-line front end. Links only the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "memkin/memkin.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(memkin_status s) {
    switch (s) {
        case MEMKIN_ERR_PARSE:
        case MEMKIN_ERR_VALIDATION: return kExitValidation;
        default: return kExitRuntime;
    }
}

void check(memkin_status s, const std::string& context = {}) {
    if (s == MEMKIN_OK) return;
    std::string msg = memkin_last_error();
    throw Failure{exit_code_for(s), context.empty() ? msg : context + ": " + msg};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    memkin_string_free(s);
    return out;
}

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct ParamsDeleter {
    void operator()(memkin_params* p) const { memkin_params_free(p); }
};
struct TraceDeleter {
    void operator()(memkin_trace* t) const { memkin_trace_free(t); }
};
struct PhaseDeleter {
    void operator()(memkin_phase* d) const { memkin_phase_free(d); }
};
using ParamsPtr = std::unique_ptr<memkin_params, ParamsDeleter>;
using TracePtr = std::unique_ptr<memkin_trace, TraceDeleter>;
using PhasePtr = std::unique_ptr<memkin_phase, PhaseDeleter>;

struct Options {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int stride = 1;
    int threads = 0;

    double start_fraction = -1;  // depress: negative selects the potentiation end state
    int n_stop = 8000;
    double v_start = 0, v_stop = 3, v_step = 0.01;
    int map_n = 8000;
    int map_size = 64;
    std::vector<double> temperatures{160, 200, 240, 294};
    std::vector<int> pairs{1, 5001, 16001};
};

ParamsPtr load_config(const Options& o) {
    memkin_params* raw = nullptr;
    if (o.config.empty())
        check(memkin_params_defaults(&raw));
    else
        check(memkin_params_load(o.config.c_str(), &raw), o.config);
    ParamsPtr p(raw);
    char* warnings = nullptr;
    check(memkin_params_validate(p.get(), &warnings));
    std::string w = take(warnings);
    if (!w.empty()) std::cerr << "warning: " << w;
    return p;
}

json params_json(const memkin_params* p) {
    char* s = nullptr;
    check(memkin_params_to_json(p, &s));
    return json::parse(take(s));
}

void emit(const Options& o, const std::string& content, const memkin_params* snapshot) {
    if (o.out.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    auto write = [](const std::string& path, const std::string& text) {
        std::string tmp = path + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw Failure{kExitRuntime, "cannot write " + path};
            f << text;
            if (!f) throw Failure{kExitRuntime, "cannot write " + path};
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Failure{kExitRuntime, "cannot write " + path};
    };
    write(o.out, content);
    // JSON outputs embed the snapshot; CSV and SVG get a sidecar.
    if (o.format != "json" && snapshot) write(o.out + ".params.json", params_json(snapshot).dump(2) + "\n");
}

void require_format(const Options& o, std::initializer_list<const char*> allowed, const char* cmd) {
    for (const char* a : allowed)
        if (o.format == a) return;
    throw Failure{kExitValidation, std::string("format '") + o.format + "' is not supported by " + cmd};
}

std::string trace_output(const Options& o, memkin_trace* t, const char* cmd) {
    bool dc = memkin_trace_mode(t) == MEMKIN_DC;
    size_t n = memkin_trace_length(t);
    if (o.format == "svg") {
        char* s = nullptr;
        check(memkin_trace_svg(t, dc ? 0 : 1, &s));
        return take(s);
    }
    std::vector<memkin_point> pts(n);
    for (size_t i = 0; i < n; ++i) check(memkin_trace_point(t, i, &pts[i]));

    if (o.format == "csv") {
        std::string s = dc ? "V,current_A,f31,f11,f00\n" : "n,current_A,f22,f31\n";
        for (const auto& q : pts) {
            if (dc)
                s += num(q.level) + "," + num(q.current_A) + "," + num(q.f31) + "," + num(q.f11) + "," + num(q.f00) +
                     "\n";
            else
                s += num(q.level) + "," + num(q.current_A) + "," + num(q.f22) + "," + num(q.f31) + "\n";
        }
        return s;
    }

    memkin_params* snap = nullptr;
    check(memkin_trace_params(t, &snap));
    ParamsPtr sp(snap);
    json j;
    j["command"] = cmd;
    j["params"] = params_json(sp.get());
    if (!dc) {
        memkin_linearity lin{};
        check(memkin_trace_linearity(t, &lin));
        json l;
        if (lin.has_P) l["nu_P"] = lin.defined_P ? jnum(lin.nu_P) : json(nullptr);
        if (lin.has_D) l["nu_D"] = lin.defined_D ? jnum(lin.nu_D) : json(nullptr);
        j["linearity"] = l;
        j["split"] = memkin_trace_split(t);
    }
    memkin_conservation c{};
    check(memkin_trace_conservation(t, &c));
    j["conservation"] = {{"max_current_dev", jnum(c.max_current_dev)},
                         {"max_norm_dev", jnum(c.max_norm_dev)},
                         {"max_fraction_dev", jnum(c.max_fraction_dev)}};
    json rows = json::array();
    for (const auto& q : pts) {
        if (dc)
            rows.push_back({{"V", q.level}, {"current_A", jnum(q.current_A)}, {"f31", q.f31}, {"f11", q.f11},
                            {"f00", q.f00}});
        else
            rows.push_back({{"n", q.level}, {"current_A", jnum(q.current_A)}, {"f22", q.f22}, {"f31", q.f31}});
    }
    j["points"] = rows;
    return j.dump(2) + "\n";
}

int run_trace(const Options& o, const std::string& cmd) {
    require_format(o, {"csv", "json", "svg"}, cmd.c_str());
    ParamsPtr p = load_config(o);
    memkin_trace* raw = nullptr;
    if (cmd == "potentiate")
        check(memkin_run_potentiation(p.get(), o.stride, &raw));
    else if (cmd == "depress")
        check(memkin_run_depression(p.get(), o.start_fraction, o.stride, &raw));
    else if (cmd == "cycle")
        check(memkin_run_cycle(p.get(), o.n_stop, o.stride, &raw));
    else
        check(memkin_dc_sweep(p.get(), o.v_start, o.v_stop, o.v_step, &raw));
    TracePtr t(raw);
    emit(o, trace_output(o, t.get(), cmd.c_str()), p.get());
    return kExitOk;
}

int run_phase(const Options& o) {
    require_format(o, {"csv", "json"}, "phase-diagram");
    ParamsPtr p = load_config(o);
    memkin_phase* raw = nullptr;
    check(memkin_phase_diagram(p.get(), nullptr, 0, nullptr, 0, o.stride, &raw));
    PhasePtr d(raw);
    size_t na = 0, nr = 0;
    memkin_phase_dims(d.get(), &na, &nr);
    std::vector<memkin_phase_cell> cells;
    for (size_t a = 0; a < na; ++a)
        for (size_t r = 0; r < nr; ++r) {
            memkin_phase_cell c{};
            check(memkin_phase_cell_at(d.get(), a, r, &c));
            if (c.error) std::cerr << "cell " << num(c.rate_per_us) << "/us " << num(c.amplitude_V) << " V: " << c.error << "\n";
            cells.push_back(c);
        }
    std::string out;
    if (o.format == "csv") {
        out = "kappa_inv_per_us,amplitude_mV,nu_P_norm,nu_D_norm\n";
        for (const auto& c : cells)
            out += num(c.rate_per_us) + "," + num(std::round(c.amplitude_V * 1e6) / 1e3) + "," + num(c.nu_P_norm) + "," +
                   num(c.nu_D_norm) + "\n";
    } else {
        json j;
        j["command"] = "phase-diagram";
        j["params"] = params_json(p.get());
        j["stride"] = o.stride;
        j["depression_start_fraction"] = memkin_phase_start_fraction(d.get());
        json rows = json::array();
        for (const auto& c : cells) {
            json row{{"kappa_inv_per_us", c.rate_per_us},
                     {"amplitude_mV", std::round(c.amplitude_V * 1e6) / 1e3},
                     {"nu_P", jnum(c.nu_P)},
                     {"nu_D", jnum(c.nu_D)},
                     {"nu_P_norm", jnum(c.nu_P_norm)},
                     {"nu_D_norm", jnum(c.nu_D_norm)}};
            if (c.error) row["error"] = c.error;
            rows.push_back(row);
        }
        j["cells"] = rows;
        out = j.dump(2) + "\n";
    }
    emit(o, out, p.get());
    return kExitOk;
}

int run_arrhenius(const Options& o) {
    require_format(o, {"csv", "json"}, "arrhenius");
    ParamsPtr p = load_config(o);
    memkin_arrhenius_result r{};
    std::vector<double> rates(o.pairs.size() * o.temperatures.size());
    check(memkin_arrhenius(p.get(), o.temperatures.data(), o.temperatures.size(), o.pairs.data(), o.pairs.size(), &r,
                           rates.data()));
    std::string out;
    if (o.format == "csv") {
        out = "pair_n,T_K,rate_per_s\n";
        for (size_t i = 0; i < o.pairs.size(); ++i)
            for (size_t k = 0; k < o.temperatures.size(); ++k)
                out += std::to_string(o.pairs[i]) + "," + num(o.temperatures[k]) + "," +
                       num(rates[i * o.temperatures.size() + k]) + "\n";
        std::cerr << "E_a = " << num(r.E_a) << " eV, attempt frequency = " << num(r.attempt_frequency) << " 1/s\n";
    } else {
        json j;
        j["command"] = "arrhenius";
        j["params"] = params_json(p.get());
        j["E_a_eV"] = jnum(r.E_a);
        j["attempt_frequency_per_s"] = jnum(r.attempt_frequency);
        j["fit_residual"] = jnum(r.fit_residual);
        j["max_pair_spread"] = jnum(r.max_pair_spread);
        json rows = json::array();
        for (size_t i = 0; i < o.pairs.size(); ++i)
            for (size_t k = 0; k < o.temperatures.size(); ++k)
                rows.push_back({{"pair_n", o.pairs[i]},
                                {"T_K", o.temperatures[k]},
                                {"rate_per_s", jnum(rates[i * o.temperatures.size() + k])}});
        j["rates"] = rows;
        out = j.dump(2) + "\n";
    }
    emit(o, out, p.get());
    return kExitOk;
}

int run_map(const Options& o) {
    require_format(o, {"csv", "json", "svg"}, "map-xy");
    if (o.map_size < 2 || o.map_size > 4096) throw Failure{kExitValidation, "--size must be in [2, 4096]"};
    ParamsPtr p = load_config(o);
    std::vector<unsigned char> cells(static_cast<size_t>(o.map_size) * o.map_size);
    double target = 0;
    check(memkin_xy_map(p.get(), o.map_n, o.seed, o.map_size, cells.data(), &target));
    std::string out;
    if (o.format == "svg") {
        char* s = nullptr;
        std::string title = "switched cells, n = " + std::to_string(o.map_n);
        check(memkin_xy_map_svg(cells.data(), o.map_size, title.c_str(), &s));
        out = take(s);
    } else if (o.format == "csv") {
        for (int y = 0; y < o.map_size; ++y) {
            for (int x = 0; x < o.map_size; ++x) {
                if (x) out += ',';
                out += cells[static_cast<size_t>(y) * o.map_size + x] ? '1' : '0';
            }
            out += '\n';
        }
    } else {
        json j;
        j["command"] = "map-xy";
        j["params"] = params_json(p.get());
        j["n"] = o.map_n;
        j["seed"] = o.seed;
        j["size"] = o.map_size;
        j["target_fraction"] = target;
        json rows = json::array();
        for (int y = 0; y < o.map_size; ++y) {
            std::string row;
            for (int x = 0; x < o.map_size; ++x) row += cells[static_cast<size_t>(y) * o.map_size + x] ? '1' : '0';
            rows.push_back(row);
        }
        j["cells"] = rows;
        out = j.dump(2) + "\n";
    }
    emit(o, out, p.get());
    return kExitOk;
}

int run_validate(const Options& o) {
    ParamsPtr p = load_config(o);
    std::cout << "ok\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memkin: molecular memristor kinetic model"};
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App* sub, bool outputs) {
        sub->add_option("--config,-c", o.config, "parameter file (key = value)");
        sub->add_option("--threads", o.threads, "worker threads (default: MEMKIN_THREADS or all cores)")
            ->check(CLI::NonNegativeNumber);
        if (!outputs) return;
        sub->add_option("--out,-o", o.out, "output path (default: stdout)");
        sub->add_option("--format,-f", o.format, "csv | json | svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_option("--stride", o.stride, "evaluate every stride-th level")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "random seed");
    };

    auto* pot = app.add_subcommand("potentiate", "potentiation trace");
    common(pot, true);
    auto* dep = app.add_subcommand("depress", "depression trace");
    common(dep, true);
    dep->add_option("--start", o.start_fraction, "initial switched fraction (default: end of potentiation)");
    auto* cyc = app.add_subcommand("cycle", "potentiation to n-stop, then depression");
    common(cyc, true);
    cyc->add_option("--n-stop", o.n_stop, "last potentiation level")->check(CLI::PositiveNumber);
    auto* dc = app.add_subcommand("dc-sweep", "quasi-DC current-voltage sweep");
    common(dc, true);
    dc->add_option("--v-start", o.v_start, "first voltage (V)");
    dc->add_option("--v-stop", o.v_stop, "last voltage (V)");
    dc->add_option("--v-step", o.v_step, "voltage step (V)");
    auto* ph = app.add_subcommand("phase-diagram", "linearity over nucleation rate and amplitude");
    common(ph, true);
    auto* arr = app.add_subcommand("arrhenius", "temperature dependence of the level-transition rate");
    common(arr, true);
    arr->add_option("--temperatures", o.temperatures, "temperatures (K)")->delimiter(',');
    arr->add_option("--pairs", o.pairs, "lower level of each pair")->delimiter(',');
    auto* map = app.add_subcommand("map-xy", "synthetic in-plane switched-cell map");
    common(map, true);
    map->add_option("--n", o.map_n, "pulse count")->check(CLI::NonNegativeNumber);
    map->add_option("--size", o.map_size, "cells per side");
    auto* val = app.add_subcommand("validate", "check a parameter file");
    common(val, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (o.threads > 0) memkin_set_threads(o.threads);

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "validate") return run_validate(o);
        if (name == "phase-diagram") return run_phase(o);
        if (name == "arrhenius") return run_arrhenius(o);
        if (name == "map-xy") return run_map(o);
        return run_trace(o, name);
    } catch (const Failure& f) {
        std::cerr << "memkin: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "memkin: " << e.what() << "\n";
        return kExitRuntime;
    }
}
