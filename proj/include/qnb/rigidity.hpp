#pragma once

#include "qnb/twophoton.hpp"

#include <array>

namespace qnb {

// Detuned interferometer reduced to (J, gamma, delta).
struct DetunedRegime {
    double J = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    double Gamma() const;
    double beta() const;
    double Omega_q2() const;  // 2 J / gamma
};

struct CharacteristicRoot {
    enum class Label { mechanical, optical, merged };
    cplx value;
    Label label = Label::mechanical;
};

// Roots with positive real part of -Omega^2 [(gamma - i Omega)^2 + delta^2] + J delta,
// mechanical first. With exp(-i Omega t) time dependence Im > 0 means growth.
// Roots closer than the eigenvalue solver can resolve are both labelled merged
// and reported at their mean.
std::array<CharacteristicRoot, 2> characteristic_roots(double J, double gamma, double delta);

// First-order-in-gamma approximation of the two roots (mechanical, optical).
std::array<cplx, 2> approximate_roots(double J, double gamma, double delta);

// 1 / (K(Omega) - M Omega^2) with K = M J delta / ((gamma - i Omega)^2 + delta^2).
cplx effective_susceptibility(const DetunedRegime& d, double M, double Omega);

// Omega0^2 / (M (Omega0^2 - Omega^2)^2), valid near a second-order pole.
double second_order_pole_susceptibility(double Omega0, double M, double Omega);

// Bad-cavity SQL-beating factor for readout angle phi = phi_LO - beta and
// unified efficiency eta.
double bad_cavity_xi2(const DetunedRegime& d, double eta, double phi, double Omega);

// Same for phi = pi/2, parametrized by Omega_q^2 and beta.
double bad_cavity_xi2_quadrature(double Omega_q2, double beta, double eta, double Omega);

// Residual of the optimality condition for beta at frequency Omega0.
double optimal_beta_residual(double Omega_q2, double eta, double Omega0, double beta);

// Detuning angle minimizing bad_cavity_xi2_quadrature at Omega0.
double optimal_beta(double Omega_q2, double eta, double Omega0);

// Common envelope of bad_cavity_xi2_quadrature over beta.
double bad_cavity_envelope(double Omega_q2, double eta, double Omega);

// Gamma^4 / (2 J gamma delta); +infinity when delta <= 0 (no anti-damping).
double instability_time(double J, double gamma, double delta);

// Omega_m tau_inst = Gamma^2 / (2 gamma Omega_m).
double instability_figure(double gamma, double delta, double Omega_m);

struct Carrier {
    double J = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

struct DualCarrierRigidity {
    cplx K_sum;              // K1(Omega) + K2(Omega)
    double spring = 0.0;     // static part of the low-frequency expansion
    double friction = 0.0;   // coefficient of i Omega in that expansion
    bool stable = false;     // positive spring and positive damping (friction < 0)
};

DualCarrierRigidity dual_carrier_rigidity(const Carrier& c1, const Carrier& c2, double M, double Omega);

// Near-pole regime: Omega0, pole separation Lambda, measurement strength Omega_q.
struct PoleRegimeParams {
    double Omega0 = 0.0;
    double Lambda = 0.0;
    double Omega_q = 0.0;
    double xi_tech2 = 0.0;
};

// Omega0 = (sqrt(2) J)^(1/3) and the critical detuning (4 J)^(1/3).
double pole_frequency(double J);
double pole_detuning(double J);

// sqrt(2) gamma Omega0 (1 + cos^2 phi_LO).
double pole_omega_q2(double gamma, double Omega0, double phi_LO);

// Narrowband xi^2(Omega0 + nu); eps, gamma and phi_LO enter only the loss terms.
double second_order_pole_xi2(const PoleRegimeParams& p, double nu, double eps = 0.0,
                             double gamma = 0.0, double phi_LO = 0.0);

}  // namespace qnb
