#include "qnb/elements.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"

#include <cmath>
#include <limits>

namespace qnb {

namespace {

void check_mirror(double R, double T) {
    if (R < 0.0 || T < 0.0 || R > 1.0 || T > 1.0 || std::abs(R + T - 1.0) > 1e-12)
        throw ConfigError("mirror: need R, T in [0,1] with R + T = 1");
}

}  // namespace

Mat2 mirror_matrix(const MirrorSpec& spec) {
    check_mirror(spec.R, spec.T);
    const double r = std::sqrt(spec.R);
    const double t = std::sqrt(spec.T);
    Mat2 m;
    if (spec.convention == MirrorSpec::Convention::real)
        m << -r, t, t, r;
    else
        m << r, cplx(0.0, t), cplx(0.0, t), r;
    return m;
}

Vec2 propagate(const Vec2& e, double L, double omega0, double Omega) {
    if (L < 0.0) throw ConfigError("propagate: L must be >= 0");
    const cplx phase = std::exp(cplx(0.0, Omega * L / c_light));
    return phase * (rotation_matrix(std::fmod(omega0 * L / c_light, 2.0 * pi)) * e);
}

Vec2 apply_loss(const Vec2& e, double eps, const Vec2& n) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("apply_loss: eps must lie in [0,1]");
    const double keep = 1.0 - eps;
    return keep * e + std::sqrt(1.0 - keep * keep) * n;
}

MirrorVectors mirror_vectors(const MovableMirrorMeter& m) {
    check_mirror(m.R, m.T);
    const double kp = m.omega_p / c_light;
    const double a1c = std::sqrt(2.0 * m.I1 / (hbar * m.omega_p));
    const double a2 = std::sqrt(2.0 * m.I2 / (hbar * m.omega_p));
    const double a2c = a2 * std::cos(m.Phi0);
    const double a2s = a2 * std::sin(m.Phi0);
    const double sr = std::sqrt(m.R);

    MirrorVectors v;
    v.R1 = 2.0 * sr * kp * Vec2(0.0, -a1c);
    v.R2 = 2.0 * sr * kp * Vec2(a2s, -a2c);
    const double pref = 2.0 * std::sqrt(2.0 * hbar * m.omega_p * m.R) / c_light;
    v.F1 = pref * Vec2(std::sqrt(m.R * m.I1) - std::sqrt(m.T * m.I2) * std::cos(m.Phi0),
                       -std::sqrt(m.T * m.I2) * std::sin(m.Phi0));
    v.F2 = -pref * Vec2(std::sqrt(m.T * m.I1) + std::sqrt(m.R * m.I2) * std::cos(m.Phi0),
                        std::sqrt(m.R * m.I2) * std::sin(m.Phi0));
    return v;
}

double ponderomotive_rigidity(const MovableMirrorMeter& m) {
    return 8.0 * m.omega_p * std::sqrt(m.R * m.T * m.I1 * m.I2) * std::sin(m.Phi0) /
           (c_light * c_light);
}

double mirror_dc_force(const MovableMirrorMeter& m) {
    return 2.0 * m.R * (m.I1 - m.I2) / c_light -
           4.0 * std::sqrt(m.R * m.T * m.I1 * m.I2) * std::cos(m.Phi0) / c_light;
}

MirrorNoise movable_mirror_noise(const MovableMirrorMeter& m, const LightState& in1,
                                 const LightState& in2, double Omega) {
    if (Omega == 0.0) throw SingularFrequencyError("movable_mirror_noise: Omega = 0");
    if (!(m.eta_d > 0.0 && m.eta_d <= 1.0)) throw ConfigError("movable_mirror_noise: eta_d must lie in (0,1]");
    const MirrorVectors v = mirror_vectors(m);
    const cplx inv_chi = ponderomotive_rigidity(m) - m.M * Omega * Omega;
    const double sr = std::sqrt(m.R);
    const double st = std::sqrt(m.T);

    // Transfer matrices already divided by chi_eff, so the mechanical
    // resonance K = M Omega^2 needs no special casing.
    using Mat24 = Eigen::Matrix<cplx, 2, 4>;
    const Mat2 I = Mat2::Identity();
    Mat24 m1, m2;
    m1 << -sr * inv_chi * I + v.R1 * v.F1.transpose(), st * inv_chi * I + v.R1 * v.F2.transpose();
    m2 << st * inv_chi * I + v.R2 * v.F1.transpose(), sr * inv_chi * I + v.R2 * v.F2.transpose();

    Eigen::Matrix4cd s_in = Eigen::Matrix4cd::Zero();
    s_in.block<2, 2>(0, 0) = 2.0 * state_psd_matrix(in1);
    s_in.block<2, 2>(2, 2) = 2.0 * state_psd_matrix(in2);

    const Vec2 h[2] = {homodyne_vector(m.phi1), homodyne_vector(m.phi2)};
    const Vec2 resp[2] = {v.R1, v.R2};
    const Mat24* mm[2] = {&m1, &m2};
    const double eps2 = 1.0 / m.eta_d - 1.0;

    cplx g[2];
    for (int i = 0; i < 2; ++i) g[i] = (h[i].transpose() * resp[i])(0, 0);
    if (g[0] == 0.0 && g[1] == 0.0) throw ZeroResponseError("movable_mirror_noise: both readouts blind to displacement");

    const double inf = std::numeric_limits<double>::infinity();
    cplx s[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (g[i] == 0.0 || g[j] == 0.0) {
                s[i][j] = inf;
                continue;
            }
            const cplx den = g[i] * std::conj(g[j]);
            const cplx a = (h[i].transpose() * (*mm[i]) * s_in * mm[j]->adjoint() * h[j])(0, 0);
            const cplx b = (h[i].transpose() * mm[j]->conjugate() * s_in * mm[i]->transpose() * h[j])(0, 0);
            s[i][j] = 0.5 * (a + b) / den;
            if (i == j) s[i][j] += 0.5 * eps2 / den;
        }
    }
    return {s[0][0].real(), s[1][1].real(), s[0][1]};
}

MirrorNoise movable_mirror_noise_partials(const MovableMirrorMeter& m, double Omega) {
    if (Omega == 0.0) throw SingularFrequencyError("movable_mirror_noise_partials: Omega = 0");
    const double s1 = std::sin(m.phi1);
    const double s2 = std::sin(m.phi2 - m.Phi0);
    if (s1 == 0.0 || s2 == 0.0) throw ZeroResponseError("movable_mirror_noise_partials: readout blind to displacement");
    const double sx1 = hbar * c_light * c_light / (16.0 * m.omega_p * m.I1 * m.R * s1 * s1);
    const double sx2 = hbar * c_light * c_light / (16.0 * m.omega_p * m.I2 * m.R * s2 * s2);
    const double sff = 4.0 * hbar * m.omega_p * m.R * (m.I1 + m.I2) / (c_light * c_light);
    const double sx1f = 0.5 * hbar * std::cos(m.phi1) / s1;
    const double sx2f = 0.5 * hbar * std::cos(m.phi2 - m.Phi0) / s2;
    const cplx inv_chi = ponderomotive_rigidity(m) - m.M * Omega * Omega;

    MirrorNoise out;
    out.S11 = sx1 * std::norm(inv_chi) + sff + 2.0 * (sx1f * inv_chi).real();
    out.S22 = sx2 * std::norm(inv_chi) + sff + 2.0 * (sx2f * inv_chi).real();
    out.S12 = sff + sx1f * inv_chi + sx2f * std::conj(inv_chi);
    return out;
}

}  // namespace qnb
