#pragma once

#include <functional>
#include <stdexcept>

namespace qkin {

/// Result of a numerical integration: value plus an error estimate
/// accumulated from the embedded Gauss-Kronrod differences.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // absolute error estimate
    long long evals = 0;      // integrand evaluations
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 48;       // bisection depth per initial panel
    int max_panels = 1 << 16; // total panel budget
};

/// Single Gauss(7)/Kronrod(15) panel on [a,b]; err receives the
/// embedded-difference estimate.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

/// Adaptive integration of f over the finite interval [a,b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

/// Adaptive integration over [a,inf): dyadic blocks [a+2^k, a+2^{k+1}]
/// summed until their contribution falls below tolerance. Blocks that
/// stop decaying mark the integral as non-convergent.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 const QuadOptions& opt = {});

/// Golden-section maximization of f on [a,b]; assumes unimodality there.
double maximize_golden(const std::function<double(double)>& f, double a, double b,
                       double xtol, double* xmax = nullptr);

} // namespace qkin
