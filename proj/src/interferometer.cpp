#include "qnb/interferometer.hpp"

#include "qnb/errors.hpp"

#include <cmath>

namespace qnb {

namespace {

const Vec2 e_c(1.0, 0.0);

void check_eta(double eta_d) {
    if (!(eta_d > 0.0 && eta_d <= 1.0)) throw ConfigError("eta_d must lie in (0, 1]");
}

void check_squeeze_regime(const EffectiveIfo& ifo, const LightState& sq) {
    if (ifo.delta != 0.0 && sq.kind == LightState::Kind::squeezed && sq.r != 0.0)
        throw UnsupportedRegimeError("squeezed input is modelled for resonance-tuned interferometers only");
}

// Displacement readout direction (-delta, gamma - i Omega).
Vec2 d_vector(const EffectiveIfo& ifo, double Omega) {
    return Vec2(-ifo.delta, cplx(ifo.gamma(), -Omega));
}

cplx signal_gain(const EffectiveIfo& ifo, double phi_LO, double Omega) {
    const cplx g = (homodyne_vector(phi_LO).transpose() * d_vector(ifo, Omega))(0, 0);
    if (std::abs(g) == 0.0) throw ZeroResponseError("readout quadrature carries no signal");
    return g;
}

}  // namespace

double EffectiveIfo::Gamma() const { return std::hypot(gamma(), delta); }
double EffectiveIfo::beta() const { return std::atan2(delta, gamma()); }

EffectiveIfo scaling_law(const InterferometerConfig& cfg) {
    if (!(cfg.R_S >= 0.0 && cfg.R_S < 1.0)) throw ConfigError("R_S must lie in [0, 1)");
    if (!(cfg.M > 0.0)) throw ConfigError("M must be > 0");
    if (!(cfg.L > 0.0)) throw ConfigError("L must be > 0");
    if (!(cfg.T_arm > 0.0 && cfg.T_arm < 1.0)) throw ConfigError("T_arm must lie in (0, 1)");
    if (!(cfg.A_arm >= 0.0 && cfg.A_arm < 1.0)) throw ConfigError("A_arm must lie in [0, 1)");
    if (!(cfg.I_arm >= 0.0)) throw ConfigError("I_arm must be >= 0");
    const double T_S = 1.0 - cfg.R_S;
    const double tau = cfg.L / c_light;
    const double g1arm = cfg.T_arm / (4.0 * tau);
    const double sr = std::sqrt(cfg.R_S);
    const double den = 1.0 + 2.0 * sr * std::cos(2.0 * cfg.phi_S) + cfg.R_S;

    EffectiveIfo e;
    e.gamma1 = g1arm * T_S / den;
    e.gamma2 = cfg.A_arm / (4.0 * tau);
    e.delta = cfg.delta_arm + 2.0 * g1arm * sr * std::sin(2.0 * cfg.phi_S) / den;
    e.J = 8.0 * cfg.omega_p * cfg.I_arm / (cfg.M * c_light * cfg.L);
    e.M = cfg.M;
    e.L = cfg.L;
    if (cfg.T_arm > 0.1) e.warnings.push_back("T_arm is not small; single-mode model is approximate");
    return e;
}

double critical_coupling_power(double I0, double gamma2, double tau) {
    if (!(gamma2 > 0.0 && tau > 0.0)) throw ConfigError("critical coupling needs gamma2 > 0, tau > 0");
    return I0 / (4.0 * gamma2 * tau);
}

NoiseTriple fpmi_noise_triple(const EffectiveIfo& ifo, double phi_LO, const LightState& sq,
                              double eta_d, double Omega) {
    check_eta(eta_d);
    check_squeeze_regime(ifo, sq);
    if (!(ifo.gamma1 > 0.0)) throw ConfigError("gamma1 must be > 0");
    const CavityMatrices m = cavity_matrices(ifo.rates(), Omega);
    const Mat2 S = 2.0 * state_psd_matrix(sq);
    const Vec2 h = homodyne_vector(phi_LO);
    const cplx hd = signal_gain(ifo, phi_LO, Omega);
    const double eps2 = 1.0 / eta_d - 1.0;
    const Mat2 I = Mat2::Identity();

    NoiseTriple t;
    const double bracket = (h.transpose() * m.R1 * (S - I) * m.R1.adjoint() * h)(0, 0).real() + 1.0 + eps2;
    t.Sxx = hbar / (4.0 * ifo.M * ifo.J * ifo.gamma1) * std::norm(m.D) / std::norm(hd) * bracket;
    t.Sff = hbar * ifo.M * ifo.J *
            (e_c.transpose() * m.L * (ifo.gamma1 * S + ifo.gamma2 * I) * m.L.adjoint() * e_c)(0, 0).real();
    const Mat2 mix = m.R1 * S + std::sqrt(ifo.gamma2 / ifo.gamma1) * m.T;
    t.Sxf = 0.5 * hbar * m.D / hd * (h.transpose() * mix * m.L.adjoint() * e_c)(0, 0);
    return t;
}

double sum_noise_force(const NoiseTriple& t, cplx K, double M, double Omega) {
    const cplx inv_chi = K - M * Omega * Omega;
    return std::norm(inv_chi) * t.Sxx + 2.0 * (inv_chi * t.Sxf).real() + t.Sff;
}

double sum_noise_h_from_triple(const EffectiveIfo& ifo, const NoiseTriple& t, double Omega) {
    if (Omega == 0.0) throw SingularFrequencyError("strain noise is singular at Omega = 0");
    const cplx K = fp_rigidity(ifo.rates(), ifo.M, ifo.J, Omega);
    const double sf = sum_noise_force(t, K, ifo.M, Omega);
    const double o2 = Omega * Omega;
    return 4.0 * sf / (ifo.M * ifo.M * ifo.L * ifo.L * o2 * o2);
}

double sum_noise_h(const EffectiveIfo& ifo, double phi_LO, const LightState& sq, double eta_d,
                   double Omega) {
    check_eta(eta_d);
    check_squeeze_regime(ifo, sq);
    if (Omega == 0.0) throw SingularFrequencyError("strain noise is singular at Omega = 0");
    if (!(ifo.gamma1 > 0.0)) throw ConfigError("gamma1 must be > 0");
    const double g1 = ifo.gamma1;
    const double g2 = ifo.gamma2;
    const double d = ifo.delta;
    const double J = ifo.J;
    const double o2 = Omega * Omega;
    const cplx gi(ifo.gamma(), -Omega);
    const cplx D = gi * gi + d * d;

    const cplx diag1 = 2.0 * g1 * gi - D + J * d / o2;
    Mat2 c1;
    c1 << diag1, -2.0 * g1 * d, 2.0 * g1 * d - 2.0 * J * g1 / o2, diag1;
    Mat2 c2;
    c2 << gi, -d, d - J / o2, gi;
    c2 *= 2.0 * std::sqrt(g1 * g2);

    const Mat2 S = 2.0 * state_psd_matrix(sq);
    const Vec2 h = homodyne_vector(phi_LO);
    const cplx hd = signal_gain(ifo, phi_LO, Omega);
    const double eps2 = 1.0 / eta_d - 1.0;
    const double quad = (h.transpose() * (c1 * S * c1.adjoint() + c2 * c2.adjoint()) * h)(0, 0).real();
    const double loss = std::norm(D - J * d / o2) * eps2;
    return hbar / (ifo.M * J * g1 * ifo.L * ifo.L) / std::norm(hd) * (quad + loss);
}

UnifiedEfficiency lossy_redefinition(const EffectiveIfo& ifo, double eta_d) {
    check_eta(eta_d);
    if (!(ifo.gamma() > 0.0)) throw ConfigError("gamma must be > 0");
    UnifiedEfficiency u;
    u.eta = ifo.gamma1 / ifo.gamma() * eta_d;
    u.eps = std::sqrt(1.0 / u.eta - 1.0);
    return u;
}

NoiseTriple detuned_noise_triple(double Gamma, double beta, double phi_LO, double eta, double J,
                                 double M, double Omega) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
    if (!(Gamma > 0.0)) throw ConfigError("Gamma must be > 0");
    const double gamma = Gamma * std::cos(beta);
    const double delta = Gamma * std::sin(beta);
    const double vphi = phi_LO - beta;
    const cplx gi(gamma, -Omega);
    const cplx D = gi * gi + delta * delta;
    const cplx den(Gamma * std::sin(vphi), -Omega * std::sin(phi_LO));
    if (std::abs(den) == 0.0) throw ZeroResponseError("readout quadrature carries no signal");

    NoiseTriple t;
    t.Sxx = hbar / (4.0 * M * J * gamma * eta) * std::norm(D) / std::norm(den);
    t.Sff = hbar * M * J * gamma * (Gamma * Gamma + Omega * Omega) / std::norm(D);
    t.Sxf = 0.5 * hbar * cplx(Gamma * std::cos(vphi), -Omega * std::cos(phi_LO)) / den;
    return t;
}

double detuned_sum_noise_h(const EffectiveIfo& ifo, double phi_LO, double eta_d, double Omega) {
    if (Omega == 0.0) throw SingularFrequencyError("strain noise is singular at Omega = 0");
    const UnifiedEfficiency u = lossy_redefinition(ifo, eta_d);
    const double g = ifo.gamma();
    const double d = ifo.delta;
    const double J = ifo.J;
    const double G = ifo.Gamma();
    const double vphi = phi_LO - ifo.beta();
    const double o2 = Omega * Omega;
    const double sl = std::sin(phi_LO);
    const double den = o2 * sl * sl + G * G * std::sin(vphi) * std::sin(vphi);
    if (den == 0.0) throw ZeroResponseError("readout quadrature carries no signal");
    const cplx gi(g, -Omega);
    const cplx D = gi * gi + d * d;
    const double a = g * g - d * d + o2 + J / o2 * (d - g * std::sin(2.0 * phi_LO));
    const double b = d - J / o2 * sl * sl;
    const double num = a * a + 4.0 * g * g * b * b + u.eps * u.eps * std::norm(D - J * d / o2);
    return hbar / (ifo.M * ifo.L * ifo.L * J * g) / den * num;
}

double coupling_K(double J, double gamma, double Omega) {
    const double o2 = Omega * Omega;
    return 2.0 * J * gamma / (o2 * (gamma * gamma + o2));
}

double caves_sum_noise_h(double J, double gamma, double r, double eps_d, double M, double L,
                         double Omega) {
    const double k = coupling_K(J, gamma, Omega);
    return 2.0 * hbar / (M * L * L * Omega * Omega) *
           ((std::exp(-2.0 * r) + eps_d * eps_d) / k + k * std::exp(2.0 * r));
}

}  // namespace qnb
