#pragma once

#include "qnb/cavity.hpp"
#include "qnb/interferometer.hpp"
#include "qnb/twophoton.hpp"

#include <vector>

namespace qnb {

// Single detuned filter cavity with one partly transparent mirror.
struct FilterCavityConfig {
    double L_f = 16.0;
    double T_f = 0.0;
    double A_f = 0.0;  // loss per bounce
    double delta_f = 0.0;

    double gamma_f1() const;
    double gamma_f2() const;
    double gamma_f() const { return gamma_f1() + gamma_f2(); }
    CavityRates rates() const { return {gamma_f1(), gamma_f2(), delta_f}; }
};

// Cavity with given input half-bandwidth, detuning and loss per unit length
// A_f / L_f (the length itself is immaterial in the single-mode model).
FilterCavityConfig filter_from_rates(double gamma_f1, double delta_f, double specific_loss,
                                     double L_f = 1.0);

struct FilterReflection {
    Mat2 R;  // reflection of the input field
    Mat2 T;  // transmission of the internal loss vacuum
    cplx D;
};

FilterReflection filter_reflection(const FilterCavityConfig& fc, double Omega);

// Quadrature rotation angle of the reflected field.
double rotation_angle(const FilterCavityConfig& fc, double Omega);

// rotation_angle along a grid, unwrapped to a continuous branch.
std::vector<double> rotation_angles(const FilterCavityConfig& fc, const std::vector<double>& Omegas);

enum class FilterVariant { pre, post, both };

struct IdealAngles {
    double theta = 0.0;
    double phi_LO = 0.0;
};

// Ideal frequency-dependent squeeze and homodyne angles of a resonance-tuned
// interferometer.
IdealAngles ideal_angles(const EffectiveIfo& ifo, FilterVariant v, double r, double eps_d,
                         double Omega);

// Strain sum noise reached with the ideal angles.
double ideal_filtered_psd(const EffectiveIfo& ifo, FilterVariant v, double r, double eps_d,
                          double Omega);

// Coupling that minimizes the double-filtered noise at one frequency, and the
// resulting loss-limited strain noise.
double optimal_coupling(double r, double eps_d);
double loss_limited_psd(double M, double L, double r, double eps_d, double Omega);

enum class FilterScheme { pre, post };

// Sum noise of a resonance-tuned interferometer with a single lossy filter
// cavity; squeeze angle 0 at injection, homodyne angle pi/2.
double filtered_sum_noise(const EffectiveIfo& ifo, const FilterCavityConfig& fc, FilterScheme s,
                          double r, double eps_d, double Omega);

// sqrt(J / gamma): half-bandwidth and detuning of the lossless pre-filter.
double gamma_f0(const EffectiveIfo& ifo);

// Lossless post-filter half-bandwidth and detuning.
double gamma_f_post(const EffectiveIfo& ifo, double r, double eps_d);

struct FilterLossLimits {
    double tight = 0.0;  // A_f/L_f below which filter loss is small next to detection loss
    double crude = 0.0;  // A_f/L_f below which the cavity still works at all
};

FilterLossLimits filter_loss_limits(const EffectiveIfo& ifo, double eps_d);

}  // namespace qnb
