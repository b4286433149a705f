#include "qnb/speedmeter.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/interferometer.hpp"

#include <cmath>

namespace qnb {

namespace {

void validate(const SpeedmeterConfig& cfg) {
    if (!(cfg.gamma > 0.0)) throw ConfigError("speedmeter: gamma must be > 0");
    if (cfg.J < 0.0) throw ConfigError("speedmeter: J must be >= 0");
    if (!(cfg.gamma2 >= 0.0 && cfg.gamma2 < cfg.gamma))
        throw ConfigError("speedmeter: gamma2 must lie in [0, gamma)");
    if (!(cfg.eta_d > 0.0 && cfg.eta_d <= 1.0)) throw ConfigError("speedmeter: eta_d must lie in (0, 1]");
}

// (S_SQL / 2) { [e^-2r + e^2r cot^2 + extra_shot] / K - 2 e^2r cot + K e^2r + extra }.
double general_psd(const SpeedmeterConfig& cfg, double Omega, double extra_shot, double extra) {
    if (!(Omega > 0.0)) throw SingularFrequencyError("speedmeter: Omega must be > 0");
    const double phi = speedmeter_phi(cfg);
    const double s = std::sin(phi);
    if (s == 0.0) throw ZeroResponseError("speedmeter: amplitude readout carries no signal");
    const double cot = std::cos(phi) / s;
    const double k = sagnac_coupling(cfg, Omega);
    const double ep = std::exp(2.0 * cfg.r);
    const double em = std::exp(-2.0 * cfg.r);
    const double bracket = (em + ep * cot * cot + extra_shot / (s * s)) / k - 2.0 * ep * cot + k * ep + extra;
    return 0.5 * strain_sql(cfg.M, cfg.L, Omega) * bracket;
}

}  // namespace

double SpeedmeterConfig::eps_d2() const { return 1.0 / eta_d - 1.0; }
double SpeedmeterConfig::eps_arm2() const { return gamma2 / (gamma - gamma2); }

double sagnac_coupling(const SpeedmeterConfig& cfg, double Omega) {
    if (!(cfg.gamma > 0.0)) throw ConfigError("speedmeter: gamma must be > 0");
    const double d = cfg.gamma * cfg.gamma + Omega * Omega;
    return 4.0 * cfg.J * cfg.gamma / (d * d);
}

double speedmeter_phi(const SpeedmeterConfig& cfg) {
    if (cfg.phi_LO) return *cfg.phi_LO;
    const double k0 = sagnac_coupling(cfg, 0.0);
    return std::atan2(1.0 + cfg.eps_d2() * std::exp(-2.0 * cfg.r), k0);
}

double strain_sql(double M, double L, double Omega) { return 4.0 * hbar / (M * L * L * Omega * Omega); }

double speedmeter_psd(const SpeedmeterConfig& cfg, double Omega) {
    SpeedmeterConfig lossless = cfg;
    lossless.gamma2 = 0.0;
    lossless.eta_d = 1.0;
    validate(lossless);
    return general_psd(lossless, Omega, 0.0, 0.0);
}

double lossy_speedmeter_psd(const SpeedmeterConfig& cfg, double Omega) {
    validate(cfg);
    const double arm = cfg.eps_arm2() * coupling_K(cfg.J, cfg.gamma, Omega);
    return general_psd(cfg, Omega, cfg.eps_d2(), arm);
}

}  // namespace qnb
