#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qnb {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// Counter-clockwise rotation of a (cosine, sine) quadrature pair.
Mat2 rotation_matrix(double alpha);

// P[phi] diag(e^r, e^-r) P[-phi]. Negative r swaps the squeezed and
// anti-squeezed axes.
Mat2 squeeze_matrix(double r, double phi);

// Squeeze factor from a level in dB (20 r log10 e).
double db_to_r(double r_db);

// Homodyne readout vector H[phi] = (cos phi, sin phi).
Vec2 homodyne_vector(double phi);

struct LightState {
    enum class Kind { vacuum, coherent, squeezed };
    Kind kind = Kind::vacuum;
    double r = 0.0;
    double theta = 0.0;

    static LightState vacuum() { return {}; }
    static LightState coherent() { return {Kind::coherent, 0.0, 0.0}; }
    static LightState squeezed(double r, double theta) { return {Kind::squeezed, r, theta}; }
};

// Double-sided PSD matrix: 1/2 I for vacuum and coherent states,
// 1/2 S_sqz[2r, theta] for squeezed vacuum.
Mat2 state_psd_matrix(const LightState& state);

// S_Y = Y^dag S Y for a readout with quadrature coefficients Y.
double readout_psd(const Vec2& y, const LightState& state);

// S_YZ = Y^dag S Z.
cplx cross_psd(const Vec2& y, const Vec2& z, const LightState& state);

// Two-photon matrix of a sideband transfer f(omega_p + Omega) = f_plus,
// f(omega_p - Omega) = f_minus.
Mat2 sideband_to_quadrature(cplx f_plus, cplx f_minus);

}  // namespace qnb
