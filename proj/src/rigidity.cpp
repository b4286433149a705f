#include "qnb/rigidity.hpp"

#include "qnb/cavity.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/numerics.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace qnb {

double DetunedRegime::Gamma() const { return std::hypot(gamma, delta); }
double DetunedRegime::beta() const { return std::atan2(delta, gamma); }
double DetunedRegime::Omega_q2() const {
    if (!(gamma > 0.0)) throw ConfigError("DetunedRegime: gamma must be > 0");
    return 2.0 * J / gamma;
}

std::array<CharacteristicRoot, 2> characteristic_roots(double J, double gamma, double delta) {
    if (!(delta > 0.0)) throw ConfigError("characteristic_roots: delta must be > 0");
    if (!(J > 0.0)) throw ConfigError("characteristic_roots: J must be > 0");
    if (gamma < 0.0) throw ConfigError("characteristic_roots: gamma must be >= 0");

    // Omega^4 + 2 i gamma Omega^3 - (gamma^2 + delta^2) Omega^2 + J delta
    const std::vector<cplx> coeffs{1.0, cplx(0.0, 2.0 * gamma), -(gamma * gamma + delta * delta), 0.0,
                                   J * delta};
    std::vector<cplx> roots = num::poly_roots(coeffs);
    std::vector<cplx> right;
    for (const cplx& z : roots)
        if (z.real() > 0.0) right.push_back(z);
    if (right.size() != 2) throw NumericalError("characteristic_roots: expected two roots with Re > 0");
    std::sort(right.begin(), right.end(), [](cplx a, cplx b) { return a.real() < b.real(); });

    std::array<CharacteristicRoot, 2> out{{{right[0], CharacteristicRoot::Label::mechanical},
                                           {right[1], CharacteristicRoot::Label::optical}}};
    // A double root splits by ~sqrt(machine epsilon) in the eigenvalue solve.
    const double resolution = 1e-7 * delta;
    if (std::abs(right[1] - right[0]) < resolution) {
        const cplx mean = 0.5 * (right[0] + right[1]);
        out[0] = {mean, CharacteristicRoot::Label::merged};
        out[1] = {mean, CharacteristicRoot::Label::merged};
    }
    return out;
}

std::array<cplx, 2> approximate_roots(double J, double gamma, double delta) {
    const double d4 = delta * delta * delta * delta;
    const double disc = d4 / 4.0 - J * delta;
    if (disc < 0.0) throw UnsupportedRegimeError("approximate_roots: needs J <= delta^3 / 4");
    const double m0 = std::sqrt(delta * delta / 2.0 - std::sqrt(disc));
    const double o0 = std::sqrt(delta * delta / 2.0 + std::sqrt(disc));
    const double s = std::sqrt(d4 - 4.0 * J * delta);
    if (s == 0.0) throw SingularFrequencyError("approximate_roots: expansion fails at the double root");
    return {m0 * cplx(1.0, gamma * m0 / s), o0 * cplx(1.0, -gamma * o0 / s)};
}

cplx effective_susceptibility(const DetunedRegime& d, double M, double Omega) {
    const cplx k = fp_rigidity({d.gamma, 0.0, d.delta}, M, d.J, Omega);
    return effective_susceptibility(k, M, Omega);
}

double second_order_pole_susceptibility(double Omega0, double M, double Omega) {
    const double w = Omega0 * Omega0 - Omega * Omega;
    if (w == 0.0) throw SingularFrequencyError("second_order_pole_susceptibility: evaluated on the pole");
    return Omega0 * Omega0 / (M * w * w);
}

double bad_cavity_xi2(const DetunedRegime& d, double eta, double phi, double Omega) {
    if (!(Omega > 0.0)) throw SingularFrequencyError("bad_cavity_xi2: Omega must be > 0");
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("bad_cavity_xi2: eta must lie in (0, 1]");
    const double s = std::sin(phi);
    if (s == 0.0) throw ZeroResponseError("bad_cavity_xi2: readout angle carries no signal");
    const double c = std::cos(phi);
    const double g2 = d.gamma * d.gamma + d.delta * d.delta;
    const double om2 = d.J / g2 * (d.delta - d.gamma * eta * std::sin(2.0 * phi));
    const double w = om2 - Omega * Omega;
    return (w * w * g2 / (4.0 * d.J * d.gamma * eta * s * s) + d.J * d.gamma / g2 * (1.0 - eta * c * c)) /
           (Omega * Omega);
}

double bad_cavity_xi2_quadrature(double Omega_q2, double beta, double eta, double Omega) {
    if (!(Omega > 0.0)) throw SingularFrequencyError("bad_cavity_xi2_quadrature: Omega must be > 0");
    const double c2 = std::cos(beta) * std::cos(beta);
    const double w = Omega_q2 / 4.0 * std::sin(2.0 * beta) - Omega * Omega;
    return (w * w / (Omega_q2 * eta * c2) + Omega_q2 * c2) / (2.0 * Omega * Omega);
}

double optimal_beta_residual(double Omega_q2, double eta, double Omega0, double beta) {
    const double o2 = Omega0 * Omega0;
    const double c = std::cos(beta);
    return 4.0 * o2 / Omega_q2 - 2.0 / std::tan(beta) - Omega_q2 / o2 * (4.0 * eta - 1.0) * c * c * c * c;
}

double optimal_beta(double Omega_q2, double eta, double Omega0) {
    if (!(Omega_q2 > 0.0 && Omega0 > 0.0)) throw ConfigError("optimal_beta: needs Omega_q2, Omega0 > 0");
    auto f = [&](double b) { return optimal_beta_residual(Omega_q2, eta, Omega0, b); };
    const double lo = 1e-12;
    const double hi = pi / 2.0 * (1.0 - 1e-15);
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

double bad_cavity_envelope(double Omega_q2, double eta, double Omega) {
    return bad_cavity_xi2_quadrature(Omega_q2, optimal_beta(Omega_q2, eta, Omega), eta, Omega);
}

double instability_time(double J, double gamma, double delta) {
    if (delta <= 0.0 || gamma <= 0.0 || J <= 0.0) return std::numeric_limits<double>::infinity();
    const double g2 = gamma * gamma + delta * delta;
    return g2 * g2 / (2.0 * J * gamma * delta);
}

double instability_figure(double gamma, double delta, double Omega_m) {
    return (gamma * gamma + delta * delta) / (2.0 * gamma * Omega_m);
}

DualCarrierRigidity dual_carrier_rigidity(const Carrier& c1, const Carrier& c2, double M, double Omega) {
    DualCarrierRigidity out;
    out.K_sum = fp_rigidity({c1.gamma, 0.0, c1.delta}, M, c1.J, Omega) +
                fp_rigidity({c2.gamma, 0.0, c2.delta}, M, c2.J, Omega);
    for (const Carrier& c : {c1, c2}) {
        const double g2 = c.gamma * c.gamma + c.delta * c.delta;
        out.spring += M * c.J * c.delta / g2;
        out.friction += 2.0 * M * c.J * c.gamma * c.delta / (g2 * g2);
    }
    out.stable = out.spring > 0.0 && out.friction < 0.0;
    return out;
}

double pole_frequency(double J) { return std::cbrt(std::sqrt(2.0) * J); }
double pole_detuning(double J) { return std::cbrt(4.0 * J); }

double pole_omega_q2(double gamma, double Omega0, double phi_LO) {
    const double c = std::cos(phi_LO);
    return std::sqrt(2.0) * gamma * Omega0 * (1.0 + c * c);
}

double second_order_pole_xi2(const PoleRegimeParams& p, double nu, double eps, double gamma, double phi_LO) {
    const double q2 = p.Omega_q * p.Omega_q;
    const double a = 4.0 * nu * nu - p.Lambda * p.Lambda;
    double num = a * a;
    if (eps != 0.0) {
        const double b = a + p.Omega0 * gamma / std::sqrt(2.0) * std::sin(2.0 * phi_LO);
        num += eps * eps * (b * b + 4.0 * gamma * gamma * p.Omega0 * p.Omega0);
    }
    return (num / q2 + q2) / (2.0 * p.Omega0 * p.Omega0);
}

}  // namespace qnb
