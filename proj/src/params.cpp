#include "memkin/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "memkin/error.hpp"
#include "memkin/io.hpp"

namespace memkin {

namespace {

enum class Kind { Real, Int, Flag, Centers, DepCenters };

struct Field {
    const char* key;
    Kind kind;
    double ModelParams::*real = nullptr;
    int ModelParams::*integer = nullptr;
};

#define REAL(name) Field{#name, Kind::Real, &ModelParams::name, nullptr}
#define INT(name) Field{#name, Kind::Int, nullptr, &ModelParams::name}

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        REAL(gamma_m_31), REAL(gamma_m_22), REAL(gamma_m_11), REAL(gamma_m_00),
        REAL(Gamma_T_31), REAL(Gamma_T_22), REAL(Gamma_T_11), REAL(Gamma_T_00),
        REAL(Gamma_B_31), REAL(Gamma_B_22), REAL(Gamma_B_11), REAL(Gamma_B_00),
        REAL(a_T),        REAL(a_B),        REAL(a_m),
        REAL(delta_E),    REAL(u_lambda),   REAL(E_lambda),   REAL(delta_G0),
        REAL(H_DA),       REAL(eta),        REAL(epsilon),    REAL(sigma),
        REAL(L),          INT(N_z),         REAL(T),
        REAL(b1),         REAL(b2),         REAL(c1),         REAL(c2),
        REAL(kappa_P),    REAL(kappa_D),    REAL(a1),         REAL(a2),
        REAL(V_write_P),  REAL(V_write_D),  REAL(t_pulse_P),  REAL(t_pulse_D),
        REAL(V_read),     INT(n_max_P),     INT(n_max_D),     INT(n_theta),
        REAL(V1),         REAL(V2),         REAL(w_dc),
        REAL(E_a),
        Field{"center_source", Kind::Centers},
        Field{"depression_centers", Kind::DepCenters},
        Field{"allow_coupling_order", Kind::Flag},
    };
    return f;
}

#undef REAL
#undef INT

const Field* find_field(const std::string& key) {
    for (const auto& f : fields())
        if (key == f.key) return &f;
    return nullptr;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v) {
    double x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ValidationError("not a finite number: '" + v + "'");
    return x;
}

int parse_int(const std::string& v) {
    long x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || x < -2147483647L || x > 2147483647L)
        throw ValidationError("not an integer: '" + v + "'");
    return static_cast<int>(x);
}

bool parse_flag(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("not a boolean: '" + v + "'");
}

}  // namespace

ModelParams default_params() {
    ModelParams p{};
    p.gamma_m_31 = 5e6;
    p.gamma_m_22 = 1e11;
    p.gamma_m_11 = 1e8;
    p.gamma_m_00 = 2e11;
    p.Gamma_T_31 = p.Gamma_T_22 = p.Gamma_T_11 = p.Gamma_T_00 = 1e15;
    p.Gamma_B_31 = p.Gamma_B_22 = p.Gamma_B_11 = p.Gamma_B_00 = 1e15;
    p.a_T = 0.05;
    p.a_B = 0.05;
    p.a_m = 0.9;
    p.delta_E = 0.05;
    p.u_lambda = 0.1;
    p.E_lambda = 0.05;
    p.delta_G0 = -4.2e-4;
    p.H_DA = 0.01;
    p.eta = 40;
    p.epsilon = 0.7930534379;
    p.sigma = 0.03;
    p.L = 60;
    p.N_z = 30;
    p.T = 294;
    p.b1 = 2.857e-7;
    p.b2 = 2.907e-3;
    p.c1 = 4.253e-6;
    p.c2 = 4.096e-4;
    p.kappa_P = 540;
    p.kappa_D = 300;
    p.a1 = 697;
    p.a2 = -2940;
    p.V_write_P = 0.9;
    p.V_write_D = 0.75;
    p.t_pulse_P = 80;
    p.t_pulse_D = 65;
    p.V_read = 0.1;
    p.n_max_P = 16500;
    p.n_max_D = 16500;
    p.n_theta = 30000;
    p.V1 = 2.0;
    p.V2 = 2.76;
    p.w_dc = 0.02;
    p.E_a = 0.134;
    p.center_source = CenterSource::Theta;
    p.depression_centers = DepressionCenters::Independent;
    p.allow_coupling_order = false;
    return p;
}

double thermal_energy(double T) {
    if (!(T > 0) || !std::isfinite(T)) throw ValidationError("temperature must be positive");
    return kBoltzmannEv * T;
}

bool has_key(const std::string& key) { return find_field(key) != nullptr; }

std::vector<std::string> keys() {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.emplace_back(f.key);
    return k;
}

double get_value(const ModelParams& p, const std::string& key) {
    const Field* f = find_field(key);
    if (!f) throw ValidationError("unknown key '" + key + "'");
    switch (f->kind) {
        case Kind::Real: return p.*(f->real);
        case Kind::Int: return p.*(f->integer);
        case Kind::Flag: return p.allow_coupling_order ? 1 : 0;
        case Kind::Centers: return p.center_source == CenterSource::Theta ? 0 : 1;
        case Kind::DepCenters: return p.depression_centers == DepressionCenters::Independent ? 0 : 1;
    }
    return 0;
}

void set_value(ModelParams& p, const std::string& key, const std::string& value) {
    const Field* f = find_field(key);
    if (!f) throw ValidationError("unknown key '" + key + "'");
    switch (f->kind) {
        case Kind::Real: p.*(f->real) = parse_real(value); break;
        case Kind::Int: p.*(f->integer) = parse_int(value); break;
        case Kind::Flag: p.allow_coupling_order = parse_flag(value); break;
        case Kind::Centers:
            if (value == "theta") p.center_source = CenterSource::Theta;
            else if (value == "line") p.center_source = CenterSource::Line;
            else throw ValidationError("center_source must be 'theta' or 'line'");
            break;
        case Kind::DepCenters:
            if (value == "independent") p.depression_centers = DepressionCenters::Independent;
            else if (value == "mirrored") p.depression_centers = DepressionCenters::Mirrored;
            else throw ValidationError("depression_centers must be 'independent' or 'mirrored'");
            break;
    }
}

ModelParams load_params(const std::string& text) {
    ModelParams p = default_params();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key", lineno);
        if (value.empty()) throw ParseError("missing value for '" + key + "'", lineno);
        if (!has_key(key)) throw ParseError("unknown key '" + key + "'", lineno);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ParseError("duplicate key '" + key + "'", lineno);
        seen.push_back(key);
        try {
            set_value(p, key, value);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    validate(p);
    return p;
}

ModelParams load_params_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_params(ss.str());
}

std::vector<std::string> validate(const ModelParams& p) {
    std::vector<std::string> warnings;
    auto fail = [](const std::string& m) { throw ValidationError(m); };

    for (const auto& f : fields()) {
        if (f.kind == Kind::Real && !std::isfinite(p.*(f.real)))
            fail(std::string(f.key) + " must be finite");
    }
    for (double a : {p.a_T, p.a_B, p.a_m})
        if (a < 0 || a > 1) fail("voltage fractions must lie in [0, 1]");
    if (p.a_T + p.a_B > 1 + 1e-12) fail("voltage fractions exceed 1");
    if (std::abs(p.a_T + p.a_B + p.a_m - 1) > 1e-12) fail("voltage fractions must sum to 1");
    if (p.N_z < 2) fail("N_z must be at least 2");
    if (!(p.L > 0)) fail("L must be positive");
    if (!(p.T > 0)) fail("T must be positive");
    if (!(p.kappa_P > 0) || !(p.kappa_D > 0)) fail("kappa_P and kappa_D must be positive");
    if (!(p.epsilon > 0 && p.epsilon < 1)) fail("epsilon must lie in (0, 1)");
    if (!(p.sigma > 0)) fail("sigma must be positive");
    if (!(p.u_lambda > 0) || !(p.E_lambda > 0)) fail("u_lambda and E_lambda must be positive");
    if (!(p.eta > 0)) fail("eta must be positive");
    if (p.H_DA < 0) fail("H_DA must be non-negative");
    if (!(p.w_dc > 0)) fail("w_dc must be positive");
    if (!(p.t_pulse_P > 0) || !(p.t_pulse_D > 0)) fail("pulse widths must be positive");
    if (p.n_max_P < 1 || p.n_max_D < 1) fail("pulse counts must be at least 1");
    if (p.n_theta < 1) fail("n_theta must be at least 1");
    if (p.E_a < 0) fail("E_a must be non-negative");

    for (double g : {p.Gamma_T_31, p.Gamma_T_22, p.Gamma_T_11, p.Gamma_T_00, p.Gamma_B_31,
                     p.Gamma_B_22, p.Gamma_B_11, p.Gamma_B_00})
        if (!(g > 0)) fail("electrode couplings must be positive");
    bool ordered = p.gamma_m_00 >= p.gamma_m_22 && p.gamma_m_22 > p.gamma_m_11 &&
                   p.gamma_m_11 > p.gamma_m_31 && p.gamma_m_31 > 0;
    if (!ordered) {
        if (!(p.gamma_m_31 > 0 && p.gamma_m_11 > 0 && p.gamma_m_22 > 0 && p.gamma_m_00 > 0))
            fail("intermolecular couplings must be positive");
        if (!p.allow_coupling_order)
            fail("coupling ordering gamma_m_00 >= gamma_m_22 > gamma_m_11 > gamma_m_31 violated");
        warnings.push_back("coupling ordering gamma_m_00 >= gamma_m_22 > gamma_m_11 > gamma_m_31 overridden");
    }
    return warnings;
}

std::string serialize(const ModelParams& p) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        switch (f.kind) {
            case Kind::Real: out += format_double(p.*(f.real)); break;
            case Kind::Int: out += std::to_string(p.*(f.integer)); break;
            case Kind::Flag: out += p.allow_coupling_order ? "true" : "false"; break;
            case Kind::Centers: out += p.center_source == CenterSource::Theta ? "theta" : "line"; break;
            case Kind::DepCenters:
                out += p.depression_centers == DepressionCenters::Independent ? "independent" : "mirrored";
                break;
        }
        out += '\n';
    }
    return out;
}

bool params_equal(const ModelParams& a, const ModelParams& b) {
    for (const auto& f : fields()) {
        switch (f.kind) {
            case Kind::Real:
                if (a.*(f.real) != b.*(f.real)) return false;
                break;
            case Kind::Int:
                if (a.*(f.integer) != b.*(f.integer)) return false;
                break;
            default:
                if (get_value(a, f.key) != get_value(b, f.key)) return false;
        }
    }
    return true;
}

}  // namespace memkin
