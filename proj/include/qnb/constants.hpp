#pragma once

#include <cmath>
#include <numbers>

namespace qnb {

inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c_light = 299792458.0;
inline constexpr double pi = std::numbers::pi;

// Nd:YAG carrier used by all presets.
inline constexpr double lambda_nd_yag = 1064e-9;
inline constexpr double omega_nd_yag = 2.0 * pi * c_light / lambda_nd_yag;

// Reference coupling J = (2*pi*100 Hz)^3, equivalent to 840 kW per arm at
// M = 40 kg, L = 4 km.
inline constexpr double J_aligo = (2.0 * pi * 100.0) * (2.0 * pi * 100.0) * (2.0 * pi * 100.0);

inline double two_pi_f(double f_hz) { return 2.0 * pi * f_hz; }

}  // namespace qnb
