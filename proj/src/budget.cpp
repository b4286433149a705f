#include "qnb/budget.hpp"

#include "qnb/baselines.hpp"
#include "qnb/cavity.hpp"
#include "qnb/constants.hpp"
#include "qnb/elements.hpp"
#include "qnb/errors.hpp"
#include "qnb/filters.hpp"
#include "qnb/numerics.hpp"
#include "qnb/rigidity.hpp"
#include "qnb/speedmeter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <utility>

namespace qnb {

namespace {

using Row = std::vector<std::pair<std::string, double>>;

const std::set<std::string>& spectral_columns() {
    static const std::set<std::string> s{"S_h",     "SQL_h",   "S_XX", "S_FF",   "Re_S_XF", "Im_S_XF", "S_F",
                                         "SQL_F",   "S11",     "S22",  "Re_S12", "Im_S12",  "S_h_ideal"};
    return s;
}

double phi_or_default(const PhysicalParams& p) { return std::isnan(p.phi_LO) ? pi / 2.0 : p.phi_LO; }

LightState input_state(const PhysicalParams& p) {
    if (p.squeeze_db == 0.0) return LightState::vacuum();
    return LightState::squeezed(db_to_r(p.squeeze_db), p.squeeze_angle);
}

double strain_sql_at(const EffectiveIfo& ifo, double w) { return 4.0 * hbar / (ifo.M * ifo.L * ifo.L * w * w); }

bool has_triple(const RunConfig& cfg) {
    if (cfg.topology != Topology::fpmi && cfg.topology != Topology::cavity) return true;
    return effective_ifo(cfg).delta == 0.0 || cfg.params.squeeze_db == 0.0;
}

FilterCavityConfig filter_for(const RunConfig& cfg, const EffectiveIfo& ifo) {
    const PhysicalParams& p = cfg.params;
    const double r = db_to_r(p.squeeze_db);
    const double eps = std::sqrt(1.0 / p.eta_d - 1.0);
    const double ideal = cfg.topology == Topology::filtered_pre ? gamma_f0(ifo) : gamma_f_post(ifo, r, eps);
    const double g1 = std::isnan(p.gamma_f1_hz) ? ideal : two_pi_f(p.gamma_f1_hz);
    const double d = std::isnan(p.delta_f_hz) ? ideal : two_pi_f(p.delta_f_hz);
    return filter_from_rates(g1, d, p.specific_loss);
}

SpeedmeterConfig speedmeter_for(const PhysicalParams& p) {
    SpeedmeterConfig s;
    s.J = p.J;
    s.gamma = two_pi_f(p.gamma_hz);
    s.gamma2 = two_pi_f(p.gamma2_hz);
    s.r = db_to_r(p.squeeze_db);
    if (!std::isnan(p.phi_LO)) s.phi_LO = p.phi_LO;
    s.eta_d = p.eta_d;
    s.M = p.M;
    s.L = p.L;
    return s;
}

void push_triple(Row& row, const NoiseTriple& t) {
    row.push_back({"S_XX", t.Sxx});
    row.push_back({"S_FF", t.Sff});
    row.push_back({"Re_S_XF", t.Sxf.real()});
    row.push_back({"Im_S_XF", t.Sxf.imag()});
}

// All columns of the topology at one angular frequency.
Row evaluate(const RunConfig& cfg, double w) {
    const PhysicalParams& p = cfg.params;
    Row row;
    switch (cfg.topology) {
        case Topology::cavity:
        case Topology::fpmi: {
            const EffectiveIfo ifo = effective_ifo(cfg);
            const double phi = phi_or_default(p);
            const LightState sq = input_state(p);
            const double sh = sum_noise_h(ifo, phi, sq, p.eta_d, w);
            row.push_back({"S_h", sh});
            row.push_back({"SQL_h", strain_sql_at(ifo, w)});
            row.push_back({"xi2", sh / strain_sql_at(ifo, w)});
            if (has_triple(cfg)) push_triple(row, fpmi_noise_triple(ifo, phi, sq, p.eta_d, w));
            if (ifo.delta == 0.0) row.push_back({"calK", coupling_K(ifo.J, ifo.gamma(), w)});
            const cplx k = fp_rigidity(ifo.rates(), ifo.M, ifo.J, w);
            row.push_back({"Re_K", k.real()});
            row.push_back({"Im_K", k.imag()});
            break;
        }
        case Topology::detuned: {
            const EffectiveIfo ifo = effective_ifo(cfg);
            const double phi = phi_or_default(p);
            const double sh = detuned_sum_noise_h(ifo, phi, p.eta_d, w);
            row.push_back({"S_h", sh});
            row.push_back({"SQL_h", strain_sql_at(ifo, w)});
            row.push_back({"xi2", sh / strain_sql_at(ifo, w)});
            const UnifiedEfficiency u = lossy_redefinition(ifo, p.eta_d);
            push_triple(row, detuned_noise_triple(ifo.Gamma(), ifo.beta(), phi, u.eta, ifo.J, ifo.M, w));
            const cplx k = fp_rigidity(ifo.rates(), ifo.M, ifo.J, w);
            row.push_back({"Re_K", k.real()});
            row.push_back({"Im_K", k.imag()});
            break;
        }
        case Topology::filtered_pre:
        case Topology::filtered_post: {
            const EffectiveIfo ifo = effective_ifo(cfg);
            const double r = db_to_r(p.squeeze_db);
            const double eps = std::sqrt(1.0 / p.eta_d - 1.0);
            const bool pre = cfg.topology == Topology::filtered_pre;
            const FilterCavityConfig fc = filter_for(cfg, ifo);
            const double sh = filtered_sum_noise(ifo, fc, pre ? FilterScheme::pre : FilterScheme::post, r, eps, w);
            row.push_back({"S_h", sh});
            row.push_back({"SQL_h", strain_sql_at(ifo, w)});
            row.push_back({"xi2", sh / strain_sql_at(ifo, w)});
            row.push_back(
                {"S_h_ideal", ideal_filtered_psd(ifo, pre ? FilterVariant::pre : FilterVariant::post, r, eps, w)});
            row.push_back({"theta_f", rotation_angle(fc, w)});
            row.push_back({"calK", coupling_K(ifo.J, ifo.gamma(), w)});
            break;
        }
        case Topology::speedmeter: {
            const SpeedmeterConfig s = speedmeter_for(p);
            const bool lossless = s.gamma2 == 0.0 && s.eta_d == 1.0;
            const double sh = lossless ? speedmeter_psd(s, w) : lossy_speedmeter_psd(s, w);
            const double sql = strain_sql(s.M, s.L, w);
            row.push_back({"S_h", sh});
            row.push_back({"SQL_h", sql});
            row.push_back({"xi2", sh / sql});
            row.push_back({"K_SM", sagnac_coupling(s, w)});
            break;
        }
        case Topology::sqm: {
            const Probe probe = p.f0_hz > 0.0 ? Probe::oscillator(p.M, two_pi_f(p.f0_hz)) : Probe::free_mass(p.M);
            const double sf = sqm_sum_noise(probe, two_pi_f(p.fq_hz), w);
            const double fm = sql(Probe::free_mass(p.M), Normalization::force, w);
            row.push_back({"S_F", sf});
            row.push_back({"SQL_F", sql(probe, Normalization::force, w)});
            row.push_back({"xi2", sf / fm});
            break;
        }
        case Topology::mirror: {
            MovableMirrorMeter m;
            m.M = p.M;
            m.R = p.R;
            m.T = p.T;
            m.omega_p = 2.0 * pi * c_light / p.wavelength;
            m.I1 = p.I1;
            m.I2 = p.I2;
            m.Phi0 = p.Phi0;
            m.phi1 = p.phi1;
            m.phi2 = p.phi2;
            m.eta_d = p.eta_d;
            const MirrorNoise n = movable_mirror_noise(m, LightState::coherent(), LightState::coherent(), w);
            row.push_back({"S11", n.S11});
            row.push_back({"S22", n.S22});
            row.push_back({"Re_S12", n.S12.real()});
            row.push_back({"Im_S12", n.S12.imag()});
            row.push_back({"SQL_F", sql(Probe::free_mass(p.M), Normalization::force, w)});
            break;
        }
        case Topology::pole: {
            const double w0 = pole_frequency(p.J);
            const PoleRegimeParams pr{w0, two_pi_f(p.Lambda_hz), two_pi_f(p.fq_hz), 0.0};
            row.push_back({"xi2_pole", second_order_pole_xi2(pr, w - w0)});
            row.push_back({"xi2_osc", oscillator_xi2_nb(w0, pr.Omega_q, w - w0)});
            break;
        }
    }
    return row;
}

std::string primary_column(Topology t) {
    switch (t) {
        case Topology::sqm:
            return "S_F";
        case Topology::mirror:
            return "S11";
        case Topology::pole:
            return "";
        default:
            return "S_h";
    }
}

// Canonical column order: evaluation order with sqrt_S after the primary
// density.
std::vector<std::string> canonical_columns(const RunConfig& cfg, const Row& sample) {
    std::vector<std::string> cols;
    const std::string primary = primary_column(cfg.topology);
    for (const auto& [name, v] : sample) {
        cols.push_back(name);
        if (name == primary) cols.push_back("sqrt_S");
    }
    return cols;
}

}  // namespace

std::vector<std::string> available_columns(const RunConfig& cfg) {
    // Column names do not depend on frequency; probe away from any resonance.
    const double w = two_pi_f(std::sqrt(cfg.grid.f_min * cfg.grid.f_max)) * 1.0000001;
    return canonical_columns(cfg, evaluate(cfg, w));
}

NoiseBudget run_budget(const RunConfig& cfg) {
    validate(cfg);
    const PhysicalParams& p = cfg.params;
    if (cfg.topology == Topology::detuned && p.squeeze_db != 0.0)
        throw UnsupportedRegimeError("params.squeeze_db: the detuned closed form needs vacuum input");

    const std::vector<std::string> all = available_columns(cfg);
    std::vector<std::string> chosen = cfg.columns.empty() ? all : cfg.columns;
    for (const std::string& c : chosen)
        if (std::find(all.begin(), all.end(), c) == all.end())
            throw ConfigError("columns: '" + c + "' is not available for topology " + topology_name(cfg.topology));

    NoiseBudget b;
    if (!cfg.preset.empty()) {
        for (const Preset& pr : preset_catalog())
            if (pr.name == cfg.preset) b.comments.push_back("preset " + pr.name + ": " + pr.description);
    }
    b.comments.push_back("topology " + topology_name(cfg.topology) + ", " +
                         (cfg.sided == Sided::single ? "single" : "double") + "-sided spectral densities");
    const nlohmann::json d = derived_quantities(cfg);
    std::string derived = "derived";
    for (auto it = d.begin(); it != d.end(); ++it)
        derived += " " + it.key() + "=" + format_number(it.value().get<double>());
    b.comments.push_back(derived);

    b.header.push_back("f_Hz");
    for (const std::string& c : chosen) b.header.push_back(c);

    const double side = cfg.sided == Sided::single ? 2.0 : 1.0;
    const std::string primary = primary_column(cfg.topology);
    for (double f : num::grid(cfg.grid.f_min, cfg.grid.f_max, cfg.grid.points, cfg.grid.log_spacing)) {
        Row row;
        try {
            row = evaluate(cfg, two_pi_f(f));
        } catch (const SingularFrequencyError& e) {
            b.warnings.push_back("skipped f=" + format_number(f) + " Hz: " + e.what());
            continue;
        }
        for (auto& [name, v] : row)
            if (spectral_columns().count(name)) v *= side;
        std::vector<double> out{f};
        for (const std::string& c : chosen) {
            double v = 0.0;
            if (c == "sqrt_S") {
                for (const auto& [name, x] : row)
                    if (name == primary) v = std::sqrt(x);
            } else {
                for (const auto& [name, x] : row)
                    if (name == c) v = x;
            }
            if (!std::isfinite(v)) throw NumericalError("run_budget: non-finite " + c + " at f=" + format_number(f));
            out.push_back(v);
        }
        b.rows.push_back(std::move(out));
    }
    return b;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const NoiseBudget& b) {
    for (const std::string& c : b.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < b.header.size(); ++i) os << (i ? "," : "") << b.header[i];
    os << '\n';
    for (const auto& row : b.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

}  // namespace qnb
