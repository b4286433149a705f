#pragma once

namespace qnb {

struct Probe {
    enum class Kind { free_mass, oscillator };
    Kind kind = Kind::free_mass;
    double M = 1.0;
    double Omega0 = 0.0;

    static Probe free_mass(double M) { return {Kind::free_mass, M, 0.0}; }
    static Probe oscillator(double M, double Omega0) { return {Kind::oscillator, M, Omega0}; }
};

enum class Normalization { force, strain, displacement };

// |chi_xx(Omega)|^-1 = M |Omega0^2 - Omega^2| (Omega0 = 0 for a free mass).
double inverse_susceptibility(const Probe& p, double Omega);

// Standard quantum limit; strain normalization requires the arm length L.
double sql(const Probe& p, Normalization n, double Omega, double L = 0.0);

// Simple quantum meter with measurement strength Omega_q.
double sqm_sum_noise(const Probe& p, double Omega_q, double Omega);

// Oscillator sum noise near resonance, Omega = Omega0 + nu, |nu| << Omega0,
// normalized by the free-mass SQL at Omega0.
double oscillator_xi2_nb(double Omega0, double Omega_q, double nu);

struct ToyMeter {
    double I0 = 1.0;       // input power [W]
    double finesse = 1.0;  // number of effective bounces
    double omega_p = 0.0;
    double M = 1.0;
};

// Measurement strength frequency of the toy meter.
double toy_omega_q(const ToyMeter& t);

struct VirtualRigidityNoise {
    double Sx = 0.0;
    double SF = 0.0;
    double SxF = 0.0;
    double sum_F = 0.0;  // free-mass force-normalized sum noise
    double K_virt = 0.0;
};

VirtualRigidityNoise virtual_rigidity_noise(const ToyMeter& t, double phi_LO, double Omega);

struct ToySpeedmeterNoise {
    double Sv = 0.0;
    double Sp = 0.0;
    double Svp = 0.0;
    double sum_F = 0.0;
    double K_virt = 0.0;  // -Omega^2 Svp / Sv
};

ToySpeedmeterNoise toy_speedmeter_noise(const ToyMeter& t, double tau_delay, double phi_LO,
                                        double Omega);

// Homodyne angle cancelling back action of the toy speedmeter.
double toy_speedmeter_optimal_phi(const ToyMeter& t, double tau_delay);

// Velocity-measurement SQL sqrt(hbar / (M tau)).
double velocity_sql(double M, double tau);

// Toy-meter power F^2 I0 equivalent to an interferometer with circulating
// power Ic, bandwidth gamma and round trip tau.
double toy_power_equivalent(double Ic, double gamma, double tau);

}  // namespace qnb
