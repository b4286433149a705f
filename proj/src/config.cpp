#include "qnb/config.hpp"

#include "qnb/cavity.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/filters.hpp"
#include "qnb/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qnb {

namespace {

using nlohmann::json;

constexpr double inf = std::numeric_limits<double>::infinity();

struct Range {
    double lo, hi;
    bool lo_open, hi_open;
};

constexpr Range any{-inf, inf, false, false};
constexpr Range positive{0.0, inf, true, false};
constexpr Range non_negative{0.0, inf, false, false};
constexpr Range unit_open{0.0, 1.0, true, true};
constexpr Range unit_half_open{0.0, 1.0, false, true};
constexpr Range unit_closed{0.0, 1.0, false, false};
constexpr Range efficiency{0.0, 1.0, true, false};

struct Field {
    const char* name;
    double PhysicalParams::*member;
    Range range;
    bool optional;  // may be null
};

const std::vector<Field>& fields() {
    static const std::vector<Field> f{
        {"M", &PhysicalParams::M, positive, false},
        {"L", &PhysicalParams::L, positive, false},
        {"I_arm", &PhysicalParams::I_arm, non_negative, false},
        {"T_arm", &PhysicalParams::T_arm, unit_open, false},
        {"A_arm", &PhysicalParams::A_arm, unit_half_open, false},
        {"delta_arm_hz", &PhysicalParams::delta_arm_hz, any, false},
        {"R_S", &PhysicalParams::R_S, unit_half_open, false},
        {"phi_S", &PhysicalParams::phi_S, any, false},
        {"wavelength", &PhysicalParams::wavelength, positive, false},
        {"J", &PhysicalParams::J, positive, true},
        {"gamma_hz", &PhysicalParams::gamma_hz, positive, true},
        {"gamma2_hz", &PhysicalParams::gamma2_hz, non_negative, false},
        {"delta_hz", &PhysicalParams::delta_hz, any, false},
        {"phi_LO", &PhysicalParams::phi_LO, any, true},
        {"squeeze_db", &PhysicalParams::squeeze_db, {0.0, 30.0, false, false}, false},
        {"squeeze_angle", &PhysicalParams::squeeze_angle, any, false},
        {"eta_d", &PhysicalParams::eta_d, efficiency, false},
        {"gamma_f1_hz", &PhysicalParams::gamma_f1_hz, positive, true},
        {"delta_f_hz", &PhysicalParams::delta_f_hz, any, true},
        {"specific_loss", &PhysicalParams::specific_loss, non_negative, false},
        {"f0_hz", &PhysicalParams::f0_hz, non_negative, false},
        {"fq_hz", &PhysicalParams::fq_hz, positive, false},
        {"R", &PhysicalParams::R, unit_closed, false},
        {"T", &PhysicalParams::T, unit_closed, false},
        {"I1", &PhysicalParams::I1, non_negative, false},
        {"I2", &PhysicalParams::I2, non_negative, false},
        {"Phi0", &PhysicalParams::Phi0, any, false},
        {"phi1", &PhysicalParams::phi1, any, false},
        {"phi2", &PhysicalParams::phi2, any, false},
        {"Lambda_hz", &PhysicalParams::Lambda_hz, non_negative, false},
    };
    return f;
}

const std::vector<std::pair<Topology, std::string>>& topology_names() {
    static const std::vector<std::pair<Topology, std::string>> t{
        {Topology::sqm, "sqm"},
        {Topology::mirror, "mirror"},
        {Topology::cavity, "cavity"},
        {Topology::fpmi, "fpmi"},
        {Topology::speedmeter, "speedmeter"},
        {Topology::filtered_pre, "filtered-pre"},
        {Topology::filtered_post, "filtered-post"},
        {Topology::detuned, "detuned"},
        {Topology::pole, "second-order-pole"},
    };
    return t;
}

void check_range(const char* name, double v, Range r) {
    const bool ok = std::isfinite(v) && (r.lo_open ? v > r.lo : v >= r.lo) && (r.hi_open ? v < r.hi : v <= r.hi);
    if (!ok) {
        std::ostringstream os;
        os << "params." << name << " = " << v << " is out of range " << (r.lo_open ? "(" : "[") << r.lo << ", "
           << r.hi << (r.hi_open ? ")" : "]");
        throw ConfigError(os.str());
    }
}

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + " must be a number");
    return j.get<double>();
}

std::string line_context(const std::string& text, std::size_t byte) {
    const std::size_t end = std::min(byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
    return "line " + std::to_string(line);
}

bool is_ifo_topology(Topology t) {
    return t == Topology::cavity || t == Topology::fpmi || t == Topology::detuned || t == Topology::filtered_pre ||
           t == Topology::filtered_post || t == Topology::pole;
}

}  // namespace

std::string topology_name(Topology t) {
    for (const auto& [k, v] : topology_names())
        if (k == t) return v;
    throw ConfigError("unknown topology");
}

Topology parse_topology(const std::string& s) {
    for (const auto& [k, v] : topology_names())
        if (v == s) return k;
    throw ConfigError("topology: unknown value '" + s + "'");
}

RunConfig load_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at " + line_context(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    RunConfig cfg;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "topology") {
            if (!v.is_string()) throw ConfigError("topology must be a string");
            cfg.topology = parse_topology(v.get<std::string>());
        } else if (key == "params") {
            if (!v.is_object()) throw ConfigError("params must be an object");
            for (auto p = v.begin(); p != v.end(); ++p) {
                const auto& fs = fields();
                auto f = std::find_if(fs.begin(), fs.end(), [&](const Field& x) { return p.key() == x.name; });
                if (f == fs.end()) throw ConfigError("params." + p.key() + ": unknown field");
                if (p.value().is_null()) {
                    if (!f->optional) throw ConfigError("params." + p.key() + " may not be null");
                    cfg.params.*(f->member) = std::nan("");
                } else {
                    cfg.params.*(f->member) = number_at(p.value(), "params." + p.key());
                }
            }
        } else if (key == "grid") {
            if (!v.is_object()) throw ConfigError("grid must be an object");
            for (auto g = v.begin(); g != v.end(); ++g) {
                const std::string where = "grid." + g.key();
                if (g.key() == "f_min") cfg.grid.f_min = number_at(g.value(), where);
                else if (g.key() == "f_max") cfg.grid.f_max = number_at(g.value(), where);
                else if (g.key() == "points") {
                    if (!g.value().is_number_integer()) throw ConfigError(where + " must be an integer");
                    cfg.grid.points = g.value().get<int>();
                } else if (g.key() == "spacing") {
                    const std::string s = g.value().is_string() ? g.value().get<std::string>() : "";
                    if (s != "log" && s != "linear") throw ConfigError(where + " must be \"log\" or \"linear\"");
                    cfg.grid.log_spacing = s == "log";
                } else {
                    throw ConfigError(where + ": unknown field");
                }
            }
        } else if (key == "columns") {
            if (!v.is_array()) throw ConfigError("columns must be an array of names");
            for (const auto& c : v) {
                if (!c.is_string()) throw ConfigError("columns must be an array of names");
                cfg.columns.push_back(c.get<std::string>());
            }
        } else if (key == "sided") {
            const std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s != "single" && s != "double") throw ConfigError("sided must be \"single\" or \"double\"");
            cfg.sided = s == "single" ? Sided::single : Sided::dual;
        } else if (key == "preset") {
            if (!v.is_string()) throw ConfigError("preset must be a string");
            cfg.preset = v.get<std::string>();
        } else if (key == "derived") {
            // echoed output of a previous run; recomputed, not read
        } else {
            throw ConfigError(key + ": unknown field");
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return load_config_text(os.str());
}

json to_json(const RunConfig& cfg) {
    json params = json::object();
    for (const Field& f : fields()) {
        const double v = cfg.params.*(f.member);
        params[f.name] = std::isnan(v) ? json(nullptr) : json(v);
    }
    json doc;
    doc["topology"] = topology_name(cfg.topology);
    doc["params"] = params;
    doc["grid"] = {{"f_min", cfg.grid.f_min},
                   {"f_max", cfg.grid.f_max},
                   {"points", cfg.grid.points},
                   {"spacing", cfg.grid.log_spacing ? "log" : "linear"}};
    doc["columns"] = cfg.columns;
    doc["sided"] = cfg.sided == Sided::single ? "single" : "double";
    if (!cfg.preset.empty()) doc["preset"] = cfg.preset;
    return doc;
}

void validate(const RunConfig& cfg) {
    const PhysicalParams& p = cfg.params;
    for (const Field& f : fields()) {
        const double v = p.*(f.member);
        if (std::isnan(v) && f.optional) continue;
        check_range(f.name, v, f.range);
    }
    if (!(cfg.grid.f_min > 0.0) || !std::isfinite(cfg.grid.f_min)) throw ConfigError("grid.f_min must be > 0");
    if (!(cfg.grid.f_max > cfg.grid.f_min) || !std::isfinite(cfg.grid.f_max))
        throw ConfigError("grid.f_max must exceed grid.f_min");
    if (cfg.grid.points < 2) throw ConfigError("grid.points must be >= 2");

    const bool direct = !std::isnan(p.J);
    if (direct && std::isnan(p.gamma_hz)) throw ConfigError("params.gamma_hz is required when params.J is set");
    if (direct && !(p.gamma2_hz < p.gamma_hz)) throw ConfigError("params.gamma2_hz must be below params.gamma_hz");

    switch (cfg.topology) {
        case Topology::mirror:
            if (std::abs(p.R + p.T - 1.0) > 1e-12) throw ConfigError("params.R + params.T must equal 1");
            if (!(p.I1 > 0.0 && p.I2 > 0.0)) throw ConfigError("params.I1 and params.I2 must be > 0");
            break;
        case Topology::speedmeter:
            if (!direct) throw ConfigError("params.J is required for the speedmeter");
            break;
        case Topology::pole:
            if (!direct) throw ConfigError("params.J is required for the second-order-pole topology");
            break;
        case Topology::filtered_pre:
        case Topology::filtered_post:
            if (effective_ifo(cfg).delta != 0.0)
                throw ConfigError("params.delta_hz: filtered topologies need a resonance-tuned interferometer");
            break;
        default:
            break;
    }
    if (is_ifo_topology(cfg.topology)) (void)effective_ifo(cfg);
}

EffectiveIfo effective_ifo(const RunConfig& cfg) {
    const PhysicalParams& p = cfg.params;
    const double omega_p = 2.0 * pi * c_light / p.wavelength;
    if (!std::isnan(p.J)) {
        EffectiveIfo ifo;
        ifo.gamma2 = two_pi_f(p.gamma2_hz);
        ifo.gamma1 = two_pi_f(p.gamma_hz) - ifo.gamma2;
        ifo.delta = two_pi_f(p.delta_hz);
        ifo.J = p.J;
        ifo.M = p.M;
        ifo.L = p.L;
        return ifo;
    }
    if (cfg.topology == Topology::cavity) {
        CavityParams c;
        c.L = p.L;
        c.T1 = p.T_arm;
        c.A = p.A_arm;
        c.delta = two_pi_f(p.delta_arm_hz);
        c.M = p.M;
        c.Ic = p.I_arm;
        c.omega_p = omega_p;
        EffectiveIfo ifo;
        const CavityRates r = c.rates();
        ifo.gamma1 = r.gamma1;
        ifo.gamma2 = r.gamma2;
        ifo.delta = r.delta;
        ifo.J = c.J();
        ifo.M = p.M;
        ifo.L = p.L;
        ifo.warnings = single_mode_warnings(c, 0.0);
        return ifo;
    }
    InterferometerConfig ic;
    ic.M = p.M;
    ic.L = p.L;
    ic.I_arm = p.I_arm;
    ic.T_arm = p.T_arm;
    ic.A_arm = p.A_arm;
    ic.delta_arm = two_pi_f(p.delta_arm_hz);
    ic.R_S = p.R_S;
    ic.phi_S = p.phi_S;
    ic.eta_d = p.eta_d;
    ic.omega_p = omega_p;
    return scaling_law(ic);
}

json derived_quantities(const RunConfig& cfg) {
    const PhysicalParams& p = cfg.params;
    json d = json::object();
    d["eps_d"] = std::sqrt(1.0 / p.eta_d - 1.0);
    d["squeeze_r"] = db_to_r(p.squeeze_db);
    if (is_ifo_topology(cfg.topology)) {
        const EffectiveIfo ifo = effective_ifo(cfg);
        d["gamma1"] = ifo.gamma1;
        d["gamma2"] = ifo.gamma2;
        d["delta"] = ifo.delta;
        d["J"] = ifo.J;
        d["Gamma"] = ifo.Gamma();
        d["beta"] = ifo.beta();
        if (cfg.topology == Topology::filtered_pre || cfg.topology == Topology::filtered_post)
            d["gamma_f0"] = gamma_f0(ifo);
        if (cfg.topology == Topology::pole) d["Omega0"] = pole_frequency(ifo.J);
    }
    if (cfg.topology == Topology::speedmeter) {
        d["gamma1"] = two_pi_f(p.gamma_hz - p.gamma2_hz);
        d["gamma2"] = two_pi_f(p.gamma2_hz);
        d["J"] = p.J;
    }
    return d;
}

namespace {

RunConfig tuned(double J, double gamma_hz, double eta_d, double sq_db) {
    RunConfig c;
    c.topology = Topology::fpmi;
    c.params.J = J;
    c.params.gamma_hz = gamma_hz;
    c.params.eta_d = eta_d;
    c.params.squeeze_db = sq_db;
    c.grid = {5.0, 5000.0, 200, true};
    return c;
}

// Detuned configuration given by (Gamma [1/s], beta, phi_LO).
RunConfig detuned(double J, double Gamma, double beta, double phi_LO) {
    RunConfig c;
    c.topology = Topology::detuned;
    c.params.J = J;
    c.params.gamma_hz = Gamma * std::cos(beta) / (2.0 * pi);
    c.params.delta_hz = Gamma * std::sin(beta) / (2.0 * pi);
    c.params.gamma2_hz = 1.875 / (2.0 * pi);
    c.params.eta_d = 0.95;
    c.params.phi_LO = phi_LO;
    c.grid = {5.0, 5000.0, 200, true};
    return c;
}

std::vector<Preset> build_catalog() {
    std::vector<Preset> out;
    auto add = [&](std::string name, std::string desc, RunConfig c) {
        c.preset = name;
        out.push_back({std::move(name), std::move(desc), std::move(c)});
    };
    const std::string aligo = "J=(2pi*100 Hz)^3 (840 kW per arm, M=40 kg, L=4 km)";

    add("fig34-ordinary",
        "resonance-tuned interferometer, vacuum input, phase readout; " + aligo + ", gamma=2pi*500 1/s, eta_d=0.95",
        tuned(J_aligo, 500.0, 0.95, 0.0));
    add("fig34-squeezed",
        "resonance-tuned interferometer, 10 dB squeezing at angle 0, phase readout; " + aligo +
            ", gamma=2pi*500 1/s, eta_d=0.95",
        tuned(J_aligo, 500.0, 0.95, 10.0));
    {
        RunConfig c = tuned(J_aligo, 500.0, 0.95, 10.0);
        c.topology = Topology::filtered_pre;
        c.params.specific_loss = 1e-8;
        add("fig39-pre-filter",
            "single pre-filter cavity at gamma_f=delta_f=sqrt(J/gamma), A_f/L_f=1e-8 1/m, 10 dB squeezing; " + aligo +
                ", gamma=2pi*500 1/s, eta_d=0.95",
            c);
    }
    {
        RunConfig c = tuned(J_aligo, 500.0, 0.95, 10.0);
        c.topology = Topology::filtered_post;
        c.params.specific_loss = 1e-8;
        add("fig39-post-filter",
            "single post-filter cavity at the lossless optimum, A_f/L_f=1e-8 1/m, 10 dB squeezing; " + aligo +
                ", gamma=2pi*500 1/s, eta_d=0.95",
            c);
    }
    {
        RunConfig c = tuned(2.0 * J_aligo, 385.0, 1.0, 10.0);
        c.topology = Topology::speedmeter;
        add("fig42-speedmeter",
            "lossless Sagnac speedmeter, 10 dB squeezing, low-frequency optimal readout; J=2*(2pi*100 Hz)^3, "
            "gamma=2pi*385 1/s",
            c);
    }
    {
        RunConfig c = tuned(2.0 * J_aligo, 360.0, 0.95, 10.0);
        c.topology = Topology::speedmeter;
        c.params.gamma2_hz = 1.875 / (2.0 * pi);
        add("fig42-speedmeter-lossy",
            "lossy Sagnac speedmeter, 10 dB squeezing, low-frequency optimal readout; J=2*(2pi*100 Hz)^3, "
            "gamma=2pi*360 1/s, eta_d=0.95, gamma_2=1.875 1/s (A_arm=1e-4 in 4 km arms)",
            c);
    }
    add("fig45-broadband",
        "detuned interferometer, broadband tuning; " + aligo +
            ", Gamma=3100 1/s, beta=0.80, phi_LO=pi/2-0.44, eta_d=0.95, gamma_2=1.875 1/s",
        detuned(J_aligo, 3100.0, 0.80, pi / 2.0 - 0.44));
    add("fig45-high-frequency",
        "detuned interferometer, optical resonance near 1 kHz; J=0.1*(2pi*100 Hz)^3, Gamma=2pi*1000 1/s, "
        "beta=pi/2-0.01, phi_LO=0, eta_d=0.95, gamma_2=1.875 1/s",
        detuned(0.1 * J_aligo, 2.0 * pi * 1000.0, pi / 2.0 - 0.01, 0.0));
    add("fig45-second-order-pole",
        "detuned interferometer near the second-order pole; " + aligo +
            ", Gamma=1050 1/s, beta=pi/2-0.040, phi_LO=0.91, eta_d=0.95, gamma_2=1.875 1/s",
        detuned(J_aligo, 1050.0, pi / 2.0 - 0.040, 0.91));
    {
        RunConfig c;
        c.topology = Topology::pole;
        c.params.J = J_aligo;
        c.params.gamma_hz = 1.0;  // unused by the lossless narrowband model
        const double f0 = pole_frequency(J_aligo) / (2.0 * pi);
        c.params.fq_hz = 0.1 * f0;
        c.params.Lambda_hz = 0.0;
        c.grid = {0.7 * f0, 1.3 * f0, 241, false};
        add("fig44-pole",
            "narrowband second-order pole and oscillator SQL-beating factors, Omega_q/Omega0=0.1, Lambda=0; " + aligo,
            c);
    }
    return out;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
    static const std::vector<Preset> catalog = build_catalog();
    return catalog;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : preset_catalog())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace qnb
