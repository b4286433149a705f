#pragma once

#include "qnb/cavity.hpp"
#include "qnb/constants.hpp"
#include "qnb/twophoton.hpp"

#include <string>
#include <vector>

namespace qnb {

// Dual-recycled Fabry-Perot-Michelson interferometer.
struct InterferometerConfig {
    double M = 40.0;
    double L = 4000.0;
    double I_arm = 840e3;
    double T_arm = 0.014;
    double A_arm = 0.0;
    double delta_arm = 0.0;
    double R_S = 0.0;
    double phi_S = 0.0;
    double R_W = 0.0;
    double phi_W = 0.0;
    double phi_LO = pi / 2.0;
    LightState squeeze = LightState::vacuum();
    double eta_d = 1.0;
    double omega_p = omega_nd_yag;
};

// Equivalent single detuned cavity. M is the mirror mass; the force noise is
// referred to the half-differential signal force G/2.
struct EffectiveIfo {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double delta = 0.0;
    double J = 0.0;
    double M = 40.0;
    double L = 4000.0;
    std::vector<std::string> warnings;

    double gamma() const { return gamma1 + gamma2; }
    double Gamma() const;
    double beta() const;
    CavityRates rates() const { return {gamma1, gamma2, delta}; }
};

EffectiveIfo scaling_law(const InterferometerConfig& cfg);

// Circulating power for a critically coupled power-recycling cavity.
double critical_coupling_power(double I0, double gamma2, double tau);

struct NoiseTriple {
    double Sxx = 0.0;
    double Sff = 0.0;
    cplx Sxf{0.0, 0.0};
};

NoiseTriple fpmi_noise_triple(const EffectiveIfo& ifo, double phi_LO, const LightState& sq,
                              double eta_d, double Omega);

// S^F = |K - M Omega^2|^2 Sxx + 2 Re[(K - M Omega^2) Sxf] + Sff.
double sum_noise_force(const NoiseTriple& t, cplx K, double M, double Omega);

// Strain-normalized double-sided sum noise from the noise triple.
double sum_noise_h_from_triple(const EffectiveIfo& ifo, const NoiseTriple& t, double Omega);

// Strain-normalized double-sided sum noise from the full transfer matrices.
double sum_noise_h(const EffectiveIfo& ifo, double phi_LO, const LightState& sq, double eta_d,
                   double Omega);

struct UnifiedEfficiency {
    double eta = 1.0;
    double eps = 0.0;
};

UnifiedEfficiency lossy_redefinition(const EffectiveIfo& ifo, double eta_d);

// Vacuum-input triple of a detuned interferometer with unified efficiency eta.
NoiseTriple detuned_noise_triple(double Gamma, double beta, double phi_LO, double eta, double J,
                                 double M, double Omega);

// Closed-form strain noise of a detuned interferometer (vacuum input, unified
// efficiency folded into eps).
double detuned_sum_noise_h(const EffectiveIfo& ifo, double phi_LO, double eta_d, double Omega);

// Position-meter optomechanical coupling 2 J gamma / (Omega^2 (gamma^2 + Omega^2)).
double coupling_K(double J, double gamma, double Omega);

// Resonance-tuned interferometer with phase readout and squeeze angle 0.
double caves_sum_noise_h(double J, double gamma, double r, double eps_d, double M, double L,
                         double Omega);

}  // namespace qnb
