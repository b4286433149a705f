#include "qnb/numerics.hpp"

#include "qnb/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace qnb::num {

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, unsigned max_depth) {
    using boost::math::quadrature::gauss_kronrod;
    QuadResult out;
    double l1 = 0.0;
    out.value = gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &out.error, &l1);
    out.converged = std::isfinite(out.value) && out.error <= std::max(rel_tol * l1, 1e-300);
    return out;
}

QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& breaks, double rel_tol,
                            unsigned max_depth) {
    QuadResult total;
    total.converged = true;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        QuadResult part = integrate(f, breaks[i], breaks[i + 1], rel_tol, max_depth);
        total.value += part.value;
        total.error += part.error;
        total.converged = total.converged && part.converged;
    }
    return total;
}

QuadResult integrate_log(const std::function<double(double)>& f, double x_lo, double x_hi,
                         double rel_tol, double per_panel) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo)) throw NumericalError("integrate_log: need 0 < lo < hi");
    const double u0 = std::log(x_lo);
    const double u1 = std::log(x_hi);
    const int n = std::max(1, static_cast<int>(std::ceil((u1 - u0) / per_panel)));
    std::vector<double> breaks(n + 1);
    for (int i = 0; i <= n; ++i) breaks[i] = u0 + (u1 - u0) * i / n;
    auto g = [&f](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    return integrate_panels(g, breaks, rel_tol);
}

namespace {

struct Objective {
    const std::function<double(const std::vector<double>&)>* f;
    std::vector<double> buf;
};

double gsl_trampoline(const gsl_vector* v, void* params) {
    auto* obj = static_cast<Objective*>(params);
    for (std::size_t i = 0; i < obj->buf.size(); ++i) obj->buf[i] = gsl_vector_get(v, i);
    const double val = (*obj->f)(obj->buf);
    return std::isfinite(val) ? val : std::numeric_limits<double>::max();
}

}  // namespace

MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& x0, const std::vector<double>& step,
                        double size_tol, int max_iter) {
    const std::size_t n = x0.size();
    if (n == 0 || step.size() != n) throw NumericalError("minimize: bad dimensions");

    gsl_set_error_handler_off();
    Objective obj{&f, std::vector<double>(n)};
    gsl_multimin_function fn{&gsl_trampoline, n, &obj};

    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(n), gsl_vector_free);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, x0[i]);
        gsl_vector_set(ss.get(), i, step[i]);
    }
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n),
        gsl_multimin_fminimizer_free);
    gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());

    MinimizeResult out;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && out.iterations < max_iter) {
        ++out.iterations;
        if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), size_tol);
    }
    out.converged = status == GSL_SUCCESS;
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(s->x, i);
    out.f = s->fval;
    return out;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    std::size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == cplx(0.0)) ++lead;
    if (coeffs.size() - lead < 2) return {};
    const int n = static_cast<int>(coeffs.size() - lead - 1);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) comp(0, j) = -coeffs[lead + 1 + j] / coeffs[lead];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericalError("poly_roots: eigenvalue solver failed");
    std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return roots;
}

std::vector<double> grid(double lo, double hi, int points, bool log_spacing) {
    if (points < 2) throw ConfigError("grid: points must be >= 2");
    if (!(hi > lo)) throw ConfigError("grid: f_max must exceed f_min");
    if (log_spacing && !(lo > 0.0)) throw ConfigError("grid: log spacing needs f_min > 0");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        g[i] = log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                           : lo + t * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace qnb::num
