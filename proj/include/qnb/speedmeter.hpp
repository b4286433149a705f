#pragma once

#include <optional>

namespace qnb {

// Resonance-tuned Sagnac speedmeter. J already carries the doubled circulating
// power; gamma is the total half-bandwidth and gamma2 its loss part.
struct SpeedmeterConfig {
    double J = 0.0;
    double gamma = 0.0;
    double gamma2 = 0.0;
    double r = 0.0;
    std::optional<double> phi_LO;  // unset: low-frequency optimum
    double eta_d = 1.0;
    double M = 40.0;
    double L = 4000.0;

    double eps_d2() const;
    double eps_arm2() const;
};

double sagnac_coupling(const SpeedmeterConfig& cfg, double Omega);

// Homodyne angle used by the psd functions: cfg.phi_LO if set, otherwise
// arccot[K_SM(0) / (1 + eps_d^2 e^-2r)].
double speedmeter_phi(const SpeedmeterConfig& cfg);

// Free-mass strain SQL, 4 hbar / (M L^2 Omega^2).
double strain_sql(double M, double L, double Omega);

// Lossless sum noise (gamma2 and eta_d ignored).
double speedmeter_psd(const SpeedmeterConfig& cfg, double Omega);

// Sum noise with detection and arm-cavity loss.
double lossy_speedmeter_psd(const SpeedmeterConfig& cfg, double Omega);

}  // namespace qnb
