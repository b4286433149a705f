#include "qnb/cavity.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"

#include <cmath>
#include <sstream>

namespace qnb {

double CavityParams::tau() const { return L / c_light; }
double CavityParams::gamma1() const { return T1 / (4.0 * tau()); }
double CavityParams::gamma2() const { return A / (4.0 * tau()); }
double CavityParams::J() const { return 4.0 * omega_p * Ic / (M * c_light * L); }
CavityRates CavityParams::rates() const { return {gamma1(), gamma2(), delta}; }

std::vector<std::string> single_mode_warnings(const CavityParams& p, double Omega) {
    std::vector<std::string> w;
    auto note = [&w](const char* what, double v) {
        std::ostringstream os;
        os << what << " = " << v << " is not small";
        w.push_back(os.str());
    };
    if (p.T1 > 0.1) note("T1", p.T1);
    if (std::abs(p.delta) * p.tau() > 0.1) note("|delta| tau", std::abs(p.delta) * p.tau());
    if (std::abs(Omega) * p.tau() > 0.1) note("|Omega| tau", std::abs(Omega) * p.tau());
    return w;
}

CavityMatrices cavity_matrices(const CavityRates& r, double Omega) {
    const double g = r.gamma();
    if (!(g > 0.0)) throw ConfigError("cavity_matrices: gamma must be > 0");
    const cplx gi = cplx(g, -Omega);
    CavityMatrices m;
    m.D = gi * gi + r.delta * r.delta;
    Mat2 l;
    l << gi, -r.delta, r.delta, gi;
    m.L = l / m.D;
    const Mat2 I = Mat2::Identity();
    m.R1 = 2.0 * r.gamma1 * m.L - I;
    m.R2 = 2.0 * r.gamma2 * m.L - I;
    m.T = 2.0 * std::sqrt(r.gamma1 * r.gamma2) * m.L;
    return m;
}

cplx fp_rigidity(const CavityRates& r, double M, double J, double Omega) {
    const cplx gi = cplx(r.gamma(), -Omega);
    return M * J * r.delta / (gi * gi + r.delta * r.delta);
}

cplx effective_susceptibility(cplx K, double mu, double Omega) {
    const cplx inv = K - mu * Omega * Omega;
    if (inv == 0.0) throw SingularFrequencyError("effective_susceptibility: evaluation on a real pole");
    return 1.0 / inv;
}

ResponseVectors fp_response_vectors(const CavityParams& p, cplx E, double Omega) {
    const CavityMatrices m = cavity_matrices(p.rates(), Omega);
    const double kp = p.omega_p / c_light;
    const double ec = std::sqrt(2.0) * E.real();
    const double es = std::sqrt(2.0) * E.imag();
    const Vec2 base = m.L * Vec2(-es, ec);
    return {2.0 * kp * std::sqrt(p.gamma1() / p.tau()) * base,
            2.0 * kp * std::sqrt(p.gamma2() / p.tau()) * base};
}

ExactFpFields exact_fp_io(const ExactFpSpec& s, const ExactFpDrive& d, double Omega) {
    if (s.R1 < 0.0 || s.R2 < 0.0 || s.T1 < 0.0 || s.T2 < 0.0 ||
        std::abs(s.R1 + s.T1 - 1.0) > 1e-12 || std::abs(s.R2 + s.T2 - 1.0) > 1e-12)
        throw ConfigError("exact_fp_io: need R + T = 1 for each mirror");
    const double tau = s.L / c_light;
    const double r1 = std::sqrt(s.R1), r2 = std::sqrt(s.R2);
    const double t1 = std::sqrt(s.T1), t2 = std::sqrt(s.T2);
    const cplx i(0.0, 1.0);

    ExactFpFields out;

    // Carrier: single-pass phase omega_p tau reduced modulo 2 pi (even index).
    const cplx p0 = std::exp(i * (s.delta * tau));
    const cplx den0 = 1.0 - r1 * r2 * p0 * p0;
    if (std::abs(den0) < 1e-15) throw UndampedResonanceError("exact_fp_io: lossless cavity on resonance");
    out.E1 = (r2 * t1 * d.A1 * p0 * p0 + t2 * d.A2 * p0) / den0;
    out.E2 = (r1 * t2 * d.A2 * p0 * p0 + t1 * d.A1 * p0) / den0;
    out.F1 = (t1 * d.A1 + r1 * t2 * d.A2 * p0) / den0;
    out.F2 = (t2 * d.A2 + r2 * t1 * d.A1 * p0) / den0;
    out.B1 = -r1 * d.A1 + t1 * out.E1;
    out.B2 = -r2 * d.A2 + t2 * out.E2;

    // Sidebands at omega_p + Omega with mirror-motion source terms.
    const cplx p = std::exp(i * ((s.delta + Omega) * tau));
    const cplx den = 1.0 - r1 * r2 * p * p;
    if (std::abs(den) < 1e-15) throw UndampedResonanceError("exact_fp_io: lossless cavity on resonance");
    const double k = (s.omega_p + Omega) / c_light;
    const double kp = s.omega_p / c_light;
    const cplx mod = 2.0 * i * std::sqrt(k * kp);
    const cplx s1 = t1 * d.a1 + mod * r1 * out.E1 * d.x1;
    const cplx s2 = t2 * d.a2 + mod * r2 * out.E2 * d.x2;
    out.e1 = (r2 * s1 * p * p + s2 * p) / den;
    out.e2 = (r1 * s2 * p * p + s1 * p) / den;
    out.f1 = s1 + r1 * out.e1;
    out.f2 = s2 + r2 * out.e2;
    out.b1 = -r1 * (d.a1 - mod * d.A1 * d.x1) + t1 * out.e1;
    out.b2 = -r2 * (d.a2 - mod * d.A2 * d.x2) + t2 * out.e2;
    return out;
}

ExactFpQuadratures exact_fp_quadratures(const ExactFpSpec& s, double Omega) {
    ExactFpDrive in1, in2;
    in1.a1 = 1.0;
    in2.a2 = 1.0;
    const ExactFpFields p1 = exact_fp_io(s, in1, Omega);
    const ExactFpFields m1 = exact_fp_io(s, in1, -Omega);
    const ExactFpFields p2 = exact_fp_io(s, in2, Omega);
    const ExactFpFields m2 = exact_fp_io(s, in2, -Omega);
    return {sideband_to_quadrature(p1.b1, m1.b1), sideband_to_quadrature(p2.b2, m2.b2),
            sideband_to_quadrature(p1.b2, m1.b2)};
}

}  // namespace qnb
