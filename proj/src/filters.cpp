#include "qnb/filters.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"

#include <cmath>

namespace qnb {

namespace {

void require_tuned(const EffectiveIfo& ifo, const char* who) {
    if (ifo.delta != 0.0)
        throw UnsupportedRegimeError(std::string(who) + ": needs a resonance-tuned interferometer");
}

Mat2 coupling_matrix(double k) {
    Mat2 m;
    m << 1.0, 0.0, -k, 1.0;
    return m;
}

double strain_prefactor(const EffectiveIfo& ifo, double Omega) {
    return 2.0 * hbar / (ifo.M * ifo.L * ifo.L * Omega * Omega);
}

}  // namespace

double FilterCavityConfig::gamma_f1() const { return c_light * T_f / (4.0 * L_f); }
double FilterCavityConfig::gamma_f2() const { return c_light * A_f / (4.0 * L_f); }

FilterCavityConfig filter_from_rates(double gamma_f1, double delta_f, double specific_loss,
                                     double L_f) {
    if (!(L_f > 0.0)) throw ConfigError("filter: L_f must be > 0");
    if (gamma_f1 < 0.0) throw ConfigError("filter: gamma_f1 must be >= 0");
    if (specific_loss < 0.0) throw ConfigError("filter: A_f/L_f must be >= 0");
    FilterCavityConfig fc;
    fc.L_f = L_f;
    fc.T_f = 4.0 * L_f * gamma_f1 / c_light;
    fc.A_f = specific_loss * L_f;
    fc.delta_f = delta_f;
    return fc;
}

FilterReflection filter_reflection(const FilterCavityConfig& fc, double Omega) {
    if (!(fc.gamma_f() > 0.0)) throw ConfigError("filter: gamma_f must be > 0");
    const CavityMatrices m = cavity_matrices(fc.rates(), Omega);
    return {m.R1, m.T, m.D};
}

double rotation_angle(const FilterCavityConfig& fc, double Omega) {
    const double g = fc.gamma_f();
    const double d = fc.delta_f;
    return std::atan2(2.0 * g * d, g * g - d * d + Omega * Omega);
}

std::vector<double> rotation_angles(const FilterCavityConfig& fc, const std::vector<double>& Omegas) {
    std::vector<double> out;
    out.reserve(Omegas.size());
    for (double w : Omegas) {
        double a = rotation_angle(fc, w);
        if (!out.empty()) {
            const double prev = out.back();
            a += 2.0 * pi * std::round((prev - a) / (2.0 * pi));
        }
        out.push_back(a);
    }
    return out;
}

IdealAngles ideal_angles(const EffectiveIfo& ifo, FilterVariant v, double r, double eps_d,
                         double Omega) {
    require_tuned(ifo, "ideal_angles");
    const double k = coupling_K(ifo.J, ifo.gamma(), Omega);
    const double e2 = eps_d * eps_d;
    IdealAngles a;
    switch (v) {
        case FilterVariant::pre:
            a.theta = std::atan(k);
            a.phi_LO = pi / 2.0;
            break;
        case FilterVariant::post:
            a.theta = 0.0;
            a.phi_LO = std::atan2(1.0 + e2 * std::exp(-2.0 * r), k);
            break;
        case FilterVariant::both:
            a.theta = std::atan(e2 * k / (std::exp(-2.0 * r) + e2));
            a.phi_LO = std::atan2(1.0 + e2 * std::exp(2.0 * r), k);
            break;
    }
    return a;
}

double ideal_filtered_psd(const EffectiveIfo& ifo, FilterVariant v, double r, double eps_d,
                          double Omega) {
    require_tuned(ifo, "ideal_filtered_psd");
    if (!(Omega > 0.0)) throw SingularFrequencyError("ideal_filtered_psd: Omega must be > 0");
    const double k = coupling_K(ifo.J, ifo.gamma(), Omega);
    const double e2 = eps_d * eps_d;
    const double shot = (std::exp(-2.0 * r) + e2) / k;
    double ba = 0.0;
    switch (v) {
        case FilterVariant::pre:
            ba = k * std::exp(-2.0 * r);
            break;
        case FilterVariant::post:
            ba = e2 / (1.0 + e2 * std::exp(-2.0 * r)) * k;
            break;
        case FilterVariant::both:
            ba = e2 / (1.0 + e2 * std::exp(2.0 * r)) * k;
            break;
    }
    return strain_prefactor(ifo, Omega) * (shot + ba);
}

double optimal_coupling(double r, double eps_d) {
    if (!(eps_d > 0.0)) throw ConfigError("optimal_coupling: needs eps_d > 0");
    const double a = eps_d * std::exp(r);
    return 1.0 / a + a;
}

double loss_limited_psd(double M, double L, double r, double eps_d, double Omega) {
    return 4.0 * hbar / (M * L * L * Omega * Omega) * eps_d * std::exp(-r);
}

double filtered_sum_noise(const EffectiveIfo& ifo, const FilterCavityConfig& fc, FilterScheme s,
                          double r, double eps_d, double Omega) {
    require_tuned(ifo, "filtered_sum_noise");
    if (!(Omega > 0.0)) throw SingularFrequencyError("filtered_sum_noise: Omega must be > 0");
    const double k = coupling_K(ifo.J, ifo.gamma(), Omega);
    const Mat2 kk = coupling_matrix(k);
    const Mat2 sq = squeeze_matrix(2.0 * r, 0.0);
    const FilterReflection f = filter_reflection(fc, Omega);
    const Vec2 h = homodyne_vector(pi / 2.0);

    Mat2 inner;
    double norm = 1.0;
    if (s == FilterScheme::pre) {
        inner = kk * (f.R * sq * f.R.adjoint() + f.T * f.T.adjoint()) * kk.adjoint();
    } else {
        inner = f.R * kk * sq * kk.adjoint() * f.R.adjoint() + f.T * f.T.adjoint();
        const Vec2 b(0.0, 1.0);
        norm = std::norm(h.dot(f.R * b));
        if (norm == 0.0) throw ZeroResponseError("filtered_sum_noise: filter removes the signal quadrature");
    }
    const double q = std::real(h.dot(inner * h));
    return strain_prefactor(ifo, Omega) / k * (q + eps_d * eps_d) / norm;
}

double gamma_f0(const EffectiveIfo& ifo) { return std::sqrt(ifo.J / ifo.gamma()); }

double gamma_f_post(const EffectiveIfo& ifo, double r, double eps_d) {
    return gamma_f0(ifo) / std::sqrt(1.0 + eps_d * eps_d * std::exp(-2.0 * r));
}

FilterLossLimits filter_loss_limits(const EffectiveIfo& ifo, double eps_d) {
    const double crude = 4.0 * gamma_f0(ifo) / c_light;
    return {crude * eps_d * eps_d, crude};
}

}  // namespace qnb
