#include "qnb/baselines.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"

#include <cmath>

namespace qnb {

double inverse_susceptibility(const Probe& p, double Omega) {
    const double o0 = p.kind == Probe::Kind::oscillator ? p.Omega0 : 0.0;
    return p.M * std::abs(o0 * o0 - Omega * Omega);
}

double sql(const Probe& p, Normalization n, double Omega, double L) {
    if (!(Omega > 0.0)) throw SingularFrequencyError("sql: Omega must be > 0");
    const double inv_chi = inverse_susceptibility(p, Omega);
    switch (n) {
        case Normalization::force:
            return hbar * inv_chi;
        case Normalization::displacement:
            if (inv_chi == 0.0) throw SingularFrequencyError("sql: displacement SQL diverges on resonance");
            return hbar / inv_chi;
        case Normalization::strain: {
            if (!(L > 0.0)) throw ConfigError("sql: strain normalization needs L > 0");
            const double o2 = Omega * Omega;
            return 4.0 * hbar * inv_chi / (p.M * p.M * L * L * o2 * o2);
        }
    }
    throw ConfigError("sql: unknown normalization");
}

double sqm_sum_noise(const Probe& p, double Omega_q, double Omega) {
    if (!(Omega > 0.0)) throw SingularFrequencyError("sqm_sum_noise: Omega must be > 0");
    const double inv_chi = inverse_susceptibility(p, Omega);
    const double sx = hbar / (2.0 * p.M * Omega_q * Omega_q);
    const double sf = 0.5 * hbar * p.M * Omega_q * Omega_q;
    return inv_chi * inv_chi * sx + sf;
}

double oscillator_xi2_nb(double Omega0, double Omega_q, double nu) {
    const double q2 = Omega_q * Omega_q;
    return 0.5 * (4.0 * nu * nu / q2 + q2 / (Omega0 * Omega0));
}

double toy_omega_q(const ToyMeter& t) {
    return std::sqrt(8.0 * t.omega_p * t.I0 * t.finesse * t.finesse / (t.M * c_light * c_light));
}

VirtualRigidityNoise virtual_rigidity_noise(const ToyMeter& t, double phi_LO, double Omega) {
    const double s = std::sin(phi_LO);
    if (s == 0.0) throw ZeroResponseError("virtual_rigidity_noise: amplitude readout carries no signal");
    const double p = t.I0 * t.finesse * t.finesse;
    VirtualRigidityNoise v;
    v.Sx = hbar * c_light * c_light / (16.0 * t.omega_p * p * s * s);
    v.SF = 4.0 * hbar * t.omega_p * p / (c_light * c_light);
    v.SxF = 0.5 * hbar * std::cos(phi_LO) / s;
    const double mo2 = t.M * Omega * Omega;
    v.sum_F = mo2 * mo2 * v.Sx - 2.0 * mo2 * v.SxF + v.SF;
    v.K_virt = v.SxF / v.Sx;
    return v;
}

ToySpeedmeterNoise toy_speedmeter_noise(const ToyMeter& t, double tau_delay, double phi_LO,
                                        double Omega) {
    const double s = std::sin(phi_LO);
    if (s == 0.0) throw ZeroResponseError("toy_speedmeter_noise: amplitude readout carries no signal");
    const double cot = std::cos(phi_LO) / s;
    const double kp = t.omega_p / c_light;
    const double f2 = t.finesse * t.finesse;
    const double s_phi = hbar * t.omega_p / (4.0 * t.I0);
    const double s_i = hbar * t.omega_p * t.I0;

    ToySpeedmeterNoise n;
    n.Sv = (s_phi + s_i / (4.0 * t.I0 * t.I0) * cot * cot) / (4.0 * f2 * kp * kp * tau_delay * tau_delay);
    n.Sp = 4.0 * f2 * tau_delay * tau_delay * s_i / (c_light * c_light);
    n.Svp = -s_i / (2.0 * t.omega_p * t.I0) * cot;
    n.sum_F = Omega * Omega * (t.M * t.M * n.Sv + 2.0 * t.M * n.Svp + n.Sp);
    n.K_virt = -Omega * Omega * n.Svp / n.Sv;
    return n;
}

double toy_speedmeter_optimal_phi(const ToyMeter& t, double tau_delay) {
    const double cot = 8.0 * t.finesse * t.finesse * tau_delay * tau_delay * t.omega_p * t.I0 /
                       (t.M * c_light * c_light);
    return std::atan2(1.0, cot);
}

double velocity_sql(double M, double tau) { return std::sqrt(hbar / (M * tau)); }

double toy_power_equivalent(double Ic, double gamma, double tau) { return Ic / (gamma * tau); }

}  // namespace qnb
