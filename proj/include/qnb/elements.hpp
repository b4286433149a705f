#pragma once

#include "qnb/twophoton.hpp"

namespace qnb {

struct MirrorSpec {
    enum class Convention { symmetric, real };
    double R = 1.0;
    double T = 0.0;
    Convention convention = Convention::real;
};

// Port coupling matrix acting identically on both quadratures.
Mat2 mirror_matrix(const MirrorSpec& spec);

// Free propagation over length L of a sideband quadrature pair.
Vec2 propagate(const Vec2& e, double L, double omega0, double Omega);

// Lossy element with absorption fraction eps: the signal amplitude is scaled by
// (1 - eps) and the uncorrelated noise pair n enters with sqrt(1 - (1 - eps)^2),
// so a vacuum input stays vacuum.
Vec2 apply_loss(const Vec2& e, double eps, const Vec2& n);

// Two-sided pumped movable mirror read out by two homodyne detectors.
struct MovableMirrorMeter {
    double M = 1.0;
    double R = 0.5;
    double T = 0.5;
    double omega_p = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double Phi0 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double eta_d = 1.0;
};

struct MirrorVectors {
    Vec2 R1, R2;  // displacement responses of the outgoing fields
    Vec2 F1, F2;  // radiation-pressure force coefficients of the inputs
};

struct MirrorNoise {
    double S11 = 0.0;
    double S22 = 0.0;
    cplx S12{0.0, 0.0};
};

MirrorVectors mirror_vectors(const MovableMirrorMeter& meter);

double ponderomotive_rigidity(const MovableMirrorMeter& meter);

// Regular radiation-pressure force; compensated externally, never a noise term.
double mirror_dc_force(const MovableMirrorMeter& meter);

// Force-normalized sum-noise (cross-)spectral densities from the full
// transfer matrices, including readout loss. Entries that involve a readout
// with no displacement response (e.g. an unpumped side) are +infinity.
MirrorNoise movable_mirror_noise(const MovableMirrorMeter& meter, const LightState& in1,
                                 const LightState& in2, double Omega);

// Same quantities assembled from the measurement/back-action partial densities,
// valid for coherent inputs and lossless readout.
MirrorNoise movable_mirror_noise_partials(const MovableMirrorMeter& meter, double Omega);

}  // namespace qnb
