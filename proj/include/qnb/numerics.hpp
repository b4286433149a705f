#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qnb::num {

using cplx = std::complex<double>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod quadrature on [a, b]; b may be +infinity.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, unsigned max_depth = 30);

// Sum of adaptive integrals over consecutive panels [x0,x1], [x1,x2], ...
QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& breaks, double rel_tol = 1e-10,
                            unsigned max_depth = 30);

// Same as integrate_panels but with the integration variable u = ln(x),
// panels spaced by at most `per_panel` in u. Suited to spectra spanning decades.
QuadResult integrate_log(const std::function<double(double)>& f, double x_lo, double x_hi,
                         double rel_tol = 1e-10, double per_panel = 0.5);

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free simplex minimization (GSL nmsimplex2). Deterministic for
// fixed inputs. Converges when the simplex characteristic size drops below
// size_tol.
MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& x0, const std::vector<double>& step,
                        double size_tol = 1e-9, int max_iter = 5000);

// Roots of sum_k c[k] z^(n-k) (highest power first) from companion-matrix
// eigenvalues.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

// Evenly spaced (linear or logarithmic) grid including both end points.
std::vector<double> grid(double lo, double hi, int points, bool log_spacing);

}  // namespace qnb::num
