#include "qnb/twophoton.hpp"

#include <cmath>

namespace qnb {

Mat2 rotation_matrix(double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

Mat2 squeeze_matrix(double r, double phi) {
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::exp(r);
    d(1, 1) = std::exp(-r);
    return rotation_matrix(phi) * d * rotation_matrix(-phi);
}

double db_to_r(double r_db) { return r_db / (20.0 * std::log10(std::exp(1.0))); }

Vec2 homodyne_vector(double phi) { return Vec2(std::cos(phi), std::sin(phi)); }

Mat2 state_psd_matrix(const LightState& state) {
    if (state.kind == LightState::Kind::squeezed) return 0.5 * squeeze_matrix(2.0 * state.r, state.theta);
    return 0.5 * Mat2::Identity();
}

double readout_psd(const Vec2& y, const LightState& state) {
    return (y.adjoint() * state_psd_matrix(state) * y)(0, 0).real();
}

cplx cross_psd(const Vec2& y, const Vec2& z, const LightState& state) {
    return (y.adjoint() * state_psd_matrix(state) * z)(0, 0);
}

Mat2 sideband_to_quadrature(cplx f_plus, cplx f_minus) {
    const cplx i(0.0, 1.0);
    const cplx sum = f_plus + std::conj(f_minus);
    const cplx diff = f_plus - std::conj(f_minus);
    Mat2 m;
    m << sum, i * diff, -i * diff, sum;
    return 0.5 * m;
}

}  // namespace qnb
