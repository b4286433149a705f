#pragma once

#include "qnb/filters.hpp"
#include "qnb/interferometer.hpp"
#include "qnb/rigidity.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace qnb {

struct SignalModel {
    enum class Kind { inspiral, burst, flat };
    Kind kind = Kind::inspiral;
    double f_min = 5.0;     // [Hz] lower integration limit
    double f_max = 1500.0;  // [Hz] cutoff

    double weight(double Omega) const;

    static SignalModel inspiral(double f_max = 1500.0, double f_min = 5.0) {
        return {Kind::inspiral, f_min, f_max};
    }
    static SignalModel burst(double f_min, double f_max) { return {Kind::burst, f_min, f_max}; }
    static SignalModel flat(double f_min, double f_max) { return {Kind::flat, f_min, f_max}; }
};

using Spectrum = std::function<double(double)>;

// Integral of weight / S over [2 pi f_min, 2 pi f_max] in dOmega / 2 pi; the
// signal amplitude constant is left out.
double snr_integral(const Spectrum& S, const SignalModel& sig, double rel_tol = 1e-9);

// rho_A^2 / rho_B^2.
double snr_ratio(const Spectrum& A, const Spectrum& B, const SignalModel& sig, double rel_tol = 1e-9);

// sigma^2 Omega_q / Omega0 of the narrowband two-pole spectrum with normalized
// pole separation lambda and technical noise s.
double sigma2_narrowband(double lambda, double s);

// Same factor by adaptive quadrature of the defining integral.
double sigma2_narrowband_quadrature(double lambda, double s, double rel_tol = 1e-12);

struct Sigma2Optimum {
    double sigma2_opt = 0.0;
    double sigma2_sub = 0.0;      // Lambda = 0 with the same Omega_q
    double Lambda_over_Omega0 = 0.0;
    double Omega_q_over_Omega0 = 0.0;
};

Sigma2Optimum sigma2_optimal(double xi_tech);

// (1 / (pi Omega0)) * integral of dnu / (xi^2(Omega0 + nu) + xi_tech^2) for the
// narrowband model, by quadrature.
double sigma2_pole_quadrature(const PoleRegimeParams& p, double eps = 0.0, double gamma = 0.0,
                              double phi_LO = 0.0, double rel_tol = 1e-10);

struct OptimizationResult {
    std::vector<std::pair<std::string, double>> params;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    double tolerance = 0.0;
    bool at_boundary = false;  // e.g. the filter degenerated to a frequency-independent rotation

    double param(const std::string& name) const;
};

struct FilterOptimizationSetup {
    EffectiveIfo ifo;
    double r = 0.0;
    double eps_d = 0.0;
    double specific_loss = 0.0;  // A_f / L_f [1/m]
    FilterScheme scheme = FilterScheme::pre;
    SignalModel signal = SignalModel::inspiral();
};

// Inspiral SNR of the filtered interferometer relative to the ordinary one
// (no squeezing, phase readout).
double filter_snr_gain(const FilterOptimizationSetup& s, double gamma_f1, double delta_f);

// Maximizes filter_snr_gain over (gamma_f1, delta_f).
OptimizationResult optimize_filter_cavity(const FilterOptimizationSetup& s);

// Burst-weighted sigma^2 of a detuned interferometer with flat technical
// noise xi_tech^2 times the free-mass SQL at Omega0 = (sqrt(2) J)^(1/3).
double sigma2_burst(const EffectiveIfo& ifo, double phi_LO, double eta_d, double xi_tech2,
                    double rel_tol = 1e-8);

struct BurstOptimizationSetup {
    double J = J_aligo;
    double M = 40.0;
    double L = 4000.0;
    double gamma2 = 0.0;
    double eta_d = 1.0;
    double xi_tech2 = 0.1;
};

// Maximizes sigma2_burst over (Gamma, beta, phi_LO).
OptimizationResult optimize_burst_snr(const BurstOptimizationSetup& s);

// Maximizes the narrowband sigma^2 by quadrature over (Lambda, Omega_q), or over
// Omega_q alone with Lambda = 0.
OptimizationResult optimize_pole_sigma2(double xi_tech2, bool free_lambda);

}  // namespace qnb
