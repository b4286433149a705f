// Command-line front end: noise budgets, SQLs, characteristic roots and the
// filter-cavity / detuned-regime optimizers. Output is CSV on stdout or --out.

#include "qnb/baselines.hpp"
#include "qnb/budget.hpp"
#include "qnb/config.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/numerics.hpp"
#include "qnb/rigidity.hpp"
#include "qnb/snr.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace qnb;

namespace {

struct GridFlags {
    std::optional<double> fmin, fmax;
    std::optional<int> points;
    bool log = false;
    bool linear = false;
    std::string sided;
    std::vector<std::string> columns;

    void attach(CLI::App* app) {
        app->add_option("--fmin", fmin, "lowest frequency [Hz]");
        app->add_option("--fmax", fmax, "highest frequency [Hz]");
        app->add_option("--points", points, "number of grid points");
        app->add_flag("--log", log, "logarithmic grid spacing");
        app->add_flag("--linear", linear, "linear grid spacing");
        app->add_option("--sided", sided, "single or double")->check(CLI::IsMember({"single", "double"}));
        app->add_option("--columns", columns, "output columns")->delimiter(',');
    }

    void apply(RunConfig& cfg) const {
        if (fmin) cfg.grid.f_min = *fmin;
        if (fmax) cfg.grid.f_max = *fmax;
        if (points) cfg.grid.points = *points;
        if (log && linear) throw ConfigError("--log and --linear are mutually exclusive");
        if (log) cfg.grid.log_spacing = true;
        if (linear) cfg.grid.log_spacing = false;
        if (!sided.empty()) cfg.sided = sided == "single" ? Sided::single : Sided::dual;
        if (!columns.empty()) cfg.columns = columns;
    }
};

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

RunConfig resolve_config(const std::string& config_path, const std::string& preset) {
    if (!config_path.empty() && !preset.empty()) throw ConfigError("use either --config or --preset");
    if (!preset.empty()) return find_preset(preset).config;
    if (!config_path.empty()) return load_config_file(config_path);
    throw ConfigError("one of --config or --preset is required");
}

void emit_budget(RunConfig cfg, const GridFlags& g, const std::string& out_path) {
    g.apply(cfg);
    validate(cfg);
    const NoiseBudget b = run_budget(cfg);
    for (const std::string& w : b.warnings) std::cerr << "warning: " << w << '\n';
    Output out(out_path);
    write_csv(out.stream(), b);
}

void write_table(std::ostream& os, const std::vector<std::pair<std::string, double>>& rows) {
    os << "name,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << format_number(v) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum noise budgets for laser interferometric position meters"};
    app.require_subcommand(1);

    // budget
    std::string config_path, preset_name, out_path;
    GridFlags grid;
    CLI::App* budget = app.add_subcommand("budget", "evaluate the noise budget of a configuration");
    budget->add_option("--config", config_path, "JSON configuration file");
    budget->add_option("--preset", preset_name, "preset name");
    budget->add_option("--out", out_path, "output file (default stdout)");
    grid.attach(budget);

    // sql
    double sql_mass = 40.0, sql_length = 4000.0, sql_f0 = 0.0;
    std::string sql_norm = "h";
    GridFlags sql_grid;
    std::string sql_out;
    CLI::App* sqlc = app.add_subcommand("sql", "standard quantum limit on a frequency grid");
    sqlc->add_option("--mass", sql_mass, "test mass [kg]");
    sqlc->add_option("--length", sql_length, "arm length [m] (strain normalization)");
    sqlc->add_option("--f0", sql_f0, "oscillator eigenfrequency [Hz]; 0 for a free mass");
    sqlc->add_option("--norm", sql_norm, "h, F or x")->check(CLI::IsMember({"h", "F", "x"}));
    sqlc->add_option("--out", sql_out, "output file (default stdout)");
    sql_grid.attach(sqlc);

    // roots
    double roots_ratio = 0.03, roots_delta_hz = 100.0;
    std::optional<double> roots_j;
    int roots_points = 48;
    std::string roots_out;
    CLI::App* roots = app.add_subcommand("roots", "characteristic roots of a detuned interferometer");
    roots->add_option("--gamma-over-delta", roots_ratio, "bandwidth to detuning ratio");
    roots->add_option("--delta-hz", roots_delta_hz, "detuning [Hz]");
    roots->add_option("--j-over-delta3", roots_j, "single value of J / delta^3 (default: sweep)");
    roots->add_option("--points", roots_points, "sweep points over 0 < J / delta^3 < 1/4");
    roots->add_option("--out", roots_out, "output file (default stdout)");

    // optimize-filter
    std::string of_config, of_preset, of_out, of_scheme;
    std::optional<double> of_loss;
    CLI::App* ofil = app.add_subcommand("optimize-filter", "optimize a single filter cavity for inspiral SNR");
    ofil->add_option("--config", of_config, "JSON configuration file (filtered topology)");
    ofil->add_option("--preset", of_preset, "preset name (filtered topology)");
    ofil->add_option("--specific-loss", of_loss, "A_f / L_f [1/m]");
    ofil->add_option("--scheme", of_scheme, "pre or post")->check(CLI::IsMember({"pre", "post"}));
    ofil->add_option("--out", of_out, "output file (default stdout)");

    // optimize-detuned
    double od_xi2 = 0.1, od_J = J_aligo, od_gamma2 = 0.0, od_eta = 1.0;
    std::string od_model = "full", od_out;
    CLI::App* odet = app.add_subcommand("optimize-detuned", "optimize a detuned interferometer for burst SNR");
    odet->add_option("--xi-tech2", od_xi2, "technical noise relative to the SQL at Omega0");
    odet->add_option("--J", od_J, "optomechanical coupling J [1/s^3]");
    odet->add_option("--gamma2", od_gamma2, "loss part of the bandwidth [1/s]");
    odet->add_option("--eta-d", od_eta, "photodetector quantum efficiency");
    odet->add_option("--model", od_model, "full or narrowband")->check(CLI::IsMember({"full", "narrowband"}));
    odet->add_option("--out", od_out, "output file (default stdout)");

    // presets
    CLI::App* presets = app.add_subcommand("presets", "preset catalog");
    presets->require_subcommand(1);
    CLI::App* plist = presets->add_subcommand("list", "list presets");
    std::string prun_name, prun_out;
    GridFlags prun_grid;
    CLI::App* prun = presets->add_subcommand("run", "run a preset budget");
    prun->add_option("name", prun_name, "preset name")->required();
    prun->add_option("--out", prun_out, "output file (default stdout)");
    prun_grid.attach(prun);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (budget->parsed()) {
            emit_budget(resolve_config(config_path, preset_name), grid, out_path);
        } else if (sqlc->parsed()) {
            RunConfig gcfg;
            sql_grid.apply(gcfg);
            validate(gcfg);
            const Probe probe = sql_f0 > 0.0 ? Probe::oscillator(sql_mass, two_pi_f(sql_f0)) : Probe::free_mass(sql_mass);
            const Normalization n = sql_norm == "h" ? Normalization::strain
                                    : sql_norm == "F" ? Normalization::force
                                                      : Normalization::displacement;
            const double side = gcfg.sided == Sided::single ? 2.0 : 1.0;
            Output out(sql_out);
            out.stream() << "f_Hz,SQL_" << sql_norm << '\n';
            for (double f : num::grid(gcfg.grid.f_min, gcfg.grid.f_max, gcfg.grid.points, gcfg.grid.log_spacing)) {
                double v;
                try {
                    v = side * sql(probe, n, two_pi_f(f), sql_length);
                } catch (const SingularFrequencyError& e) {
                    std::cerr << "warning: skipped f=" << format_number(f) << " Hz: " << e.what() << '\n';
                    continue;
                }
                out.stream() << format_number(f) << ',' << format_number(v) << '\n';
            }
        } else if (roots->parsed()) {
            if (!(roots_ratio >= 0.0)) throw ConfigError("--gamma-over-delta must be >= 0");
            if (!(roots_delta_hz > 0.0)) throw ConfigError("--delta-hz must be > 0");
            if (roots_points < 1) throw ConfigError("--points must be >= 1");
            const double delta = two_pi_f(roots_delta_hz);
            const double gamma = roots_ratio * delta;
            std::vector<double> js;
            if (roots_j) {
                if (!(*roots_j > 0.0)) throw ConfigError("--j-over-delta3 must be > 0");
                js.push_back(*roots_j);
            } else {
                for (int i = 1; i <= roots_points; ++i) js.push_back(0.24 * i / roots_points);
            }
            Output out(roots_out);
            out.stream() << "J_over_delta3,mech_re,mech_im,opt_re,opt_im,approx_mech_re,approx_mech_im,"
                            "approx_opt_re,approx_opt_im\n";
            for (double j : js) {
                const double J = j * delta * delta * delta;
                const auto r = characteristic_roots(J, gamma, delta);
                std::vector<double> row{j, r[0].value.real() / delta, r[0].value.imag() / delta,
                                        r[1].value.real() / delta, r[1].value.imag() / delta};
                if (j < 0.25) {
                    const auto a = approximate_roots(J, gamma, delta);
                    for (const cplx& z : a) {
                        row.push_back(z.real() / delta);
                        row.push_back(z.imag() / delta);
                    }
                } else {
                    row.insert(row.end(), 4, std::nan(""));
                }
                for (std::size_t i = 0; i < row.size(); ++i)
                    out.stream() << (i ? "," : "") << format_number(row[i]);
                out.stream() << '\n';
            }
        } else if (ofil->parsed()) {
            const RunConfig cfg = resolve_config(of_config, of_preset);
            if (cfg.topology != Topology::filtered_pre && cfg.topology != Topology::filtered_post)
                throw ConfigError("topology: optimize-filter needs filtered-pre or filtered-post");
            FilterOptimizationSetup s;
            s.ifo = effective_ifo(cfg);
            s.r = db_to_r(cfg.params.squeeze_db);
            s.eps_d = std::sqrt(1.0 / cfg.params.eta_d - 1.0);
            s.specific_loss = of_loss ? *of_loss : cfg.params.specific_loss;
            if (!(s.specific_loss >= 0.0)) throw ConfigError("--specific-loss must be >= 0");
            s.scheme = cfg.topology == Topology::filtered_pre ? FilterScheme::pre : FilterScheme::post;
            if (!of_scheme.empty()) s.scheme = of_scheme == "pre" ? FilterScheme::pre : FilterScheme::post;
            const OptimizationResult r = optimize_filter_cavity(s);
            auto ordinary_sq = [&](double w) {
                return caves_sum_noise_h(s.ifo.J, s.ifo.gamma(), s.r, s.eps_d, s.ifo.M, s.ifo.L, w);
            };
            auto ordinary = [&](double w) {
                return caves_sum_noise_h(s.ifo.J, s.ifo.gamma(), 0.0, s.eps_d, s.ifo.M, s.ifo.L, w);
            };
            const double g0 = r.param("gamma_f0");
            Output out(of_out);
            write_table(out.stream(), {{"specific_loss", s.specific_loss},
                                       {"gamma_f1", r.param("gamma_f1")},
                                       {"delta_f", r.param("delta_f")},
                                       {"gamma_f0", g0},
                                       {"gamma_f1_over_gamma_f0", r.param("gamma_f1") / g0},
                                       {"delta_f_over_gamma_f0", r.param("delta_f") / g0},
                                       {"snr_gain", r.objective},
                                       {"squeezing_only_gain", snr_ratio(ordinary_sq, ordinary, s.signal)},
                                       {"frequency_independent", r.at_boundary ? 1.0 : 0.0},
                                       {"iterations", static_cast<double>(r.iterations)},
                                       {"converged", r.converged ? 1.0 : 0.0}});
            if (!r.converged) return 3;
        } else if (odet->parsed()) {
            if (!(od_xi2 > 0.0)) throw ConfigError("--xi-tech2 must be > 0");
            if (!(od_eta > 0.0 && od_eta <= 1.0)) throw ConfigError("--eta-d must lie in (0, 1]");
            if (!(od_gamma2 >= 0.0)) throw ConfigError("--gamma2 must be >= 0");
            if (!(od_J > 0.0)) throw ConfigError("--J must be > 0");
            const double analytic = sigma2_optimal(std::sqrt(od_xi2)).sigma2_opt;
            OptimizationResult r;
            if (od_model == "narrowband") {
                r = optimize_pole_sigma2(od_xi2, true);
            } else {
                BurstOptimizationSetup s;
                s.J = od_J;
                s.gamma2 = od_gamma2;
                s.eta_d = od_eta;
                s.xi_tech2 = od_xi2;
                r = optimize_burst_snr(s);
            }
            std::vector<std::pair<std::string, double>> rows = r.params;
            rows.push_back({"sigma2", r.objective});
            rows.push_back({"sigma2_analytic", analytic});
            rows.push_back({"ratio", r.objective / analytic});
            rows.push_back({"iterations", static_cast<double>(r.iterations)});
            rows.push_back({"converged", r.converged ? 1.0 : 0.0});
            Output out(od_out);
            write_table(out.stream(), rows);
            if (!r.converged) return 3;
        } else if (plist->parsed()) {
            std::cout << "name,topology,description\n";
            for (const Preset& p : preset_catalog())
                std::cout << p.name << ',' << topology_name(p.config.topology) << ",\"" << p.description << "\"\n";
        } else if (prun->parsed()) {
            emit_budget(find_preset(prun_name).config, prun_grid, prun_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
