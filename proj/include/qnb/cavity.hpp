#pragma once

#include "qnb/twophoton.hpp"

#include <string>
#include <vector>

namespace qnb {

// Single-mode rates of a cavity [1/s].
struct CavityRates {
    double gamma1 = 0.0;  // input-coupler half-bandwidth
    double gamma2 = 0.0;  // loss (or far-mirror) half-bandwidth
    double delta = 0.0;   // detuning
    double gamma() const { return gamma1 + gamma2; }
};

struct CavityParams {
    double L = 4000.0;
    double T1 = 0.014;
    double A = 0.0;  // loss or far-mirror transmissivity per bounce
    double delta = 0.0;
    double M = 40.0;  // reduced mass
    double Ic = 0.0;  // circulating power
    double omega_p = 0.0;

    double tau() const;
    double gamma1() const;
    double gamma2() const;
    double J() const;  // 4 omega_p Ic / (M c L)
    CavityRates rates() const;
};

// Single-mode validity notes (T1 << 1, |delta| tau << 1, |Omega| tau << 1).
std::vector<std::string> single_mode_warnings(const CavityParams& p, double Omega);

struct CavityMatrices {
    Mat2 L;   // resonant gain matrix
    Mat2 R1;  // input-side reflection
    Mat2 R2;  // far-side reflection
    Mat2 T;   // transmission
    cplx D;   // (gamma - i Omega)^2 + delta^2
};

CavityMatrices cavity_matrices(const CavityRates& r, double Omega);

// Optical rigidity K = M J delta / D(Omega).
cplx fp_rigidity(const CavityRates& r, double M, double J, double Omega);

// 1 / (K - mu Omega^2).
cplx effective_susceptibility(cplx K, double mu, double Omega);

struct ResponseVectors {
    Vec2 R1, R2;
};

// Displacement response of the outgoing quadratures for intracavity amplitude E
// (sqrt of photon flux units).
ResponseVectors fp_response_vectors(const CavityParams& p, cplx E, double Omega);

// Exact two-mirror cavity without the single-mode approximation. The carrier
// sits delta away from an even-index resonance.
struct ExactFpSpec {
    double R1 = 0.99;
    double T1 = 0.01;
    double R2 = 1.0;
    double T2 = 0.0;
    double L = 4000.0;
    double omega_p = 0.0;
    double delta = 0.0;
};

struct ExactFpDrive {
    cplx A1{0.0, 0.0}, A2{0.0, 0.0};  // classical input amplitudes
    cplx a1{0.0, 0.0}, a2{0.0, 0.0};  // sideband inputs at omega_p + Omega
    cplx x1{0.0, 0.0}, x2{0.0, 0.0};  // mirror displacements at Omega
};

struct ExactFpFields {
    cplx B1, B2, E1, E2, F1, F2;  // classical
    cplx b1, b2, e1, e2, f1, f2;  // sidebands
};

ExactFpFields exact_fp_io(const ExactFpSpec& spec, const ExactFpDrive& drive, double Omega);

// Two-photon reflection/transmission matrices assembled from the exact
// sideband solution at omega_p +- Omega (static mirrors).
struct ExactFpQuadratures {
    Mat2 R1, R2, T;
};

ExactFpQuadratures exact_fp_quadratures(const ExactFpSpec& spec, double Omega);

}  // namespace qnb
