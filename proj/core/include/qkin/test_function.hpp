#pragma once

#include <functional>
#include <string>

namespace qkin {

/// Twice continuously differentiable test function with compact support
/// in [0, support_radius]. Values and both derivatives vanish beyond the
/// support radius.
struct TestFn {
    std::function<double(double)> f0;
    std::function<double(double)> f1;
    std::function<double(double)> f2;
    double support_radius = 0.0;
    double sup_f2 = 0.0;   // cached ||f''||_inf
    std::string label;

    double operator()(double x) const { return f0(x); }
    double d1(double x) const { return f1(x); }
    double d2(double x) const { return f2(x); }
};

/// (1-t^2)^3 bump centered at c with half-width h, scaled by amp.
/// Exactly C^2 at the support edges.
TestFn bump_fn(double center, double halfwidth, double amp = 1.0);

/// == 1 on [0, edge], smoothly (C^2) down to 0 on [edge, edge+pad].
TestFn plateau_fn(double edge, double pad);

/// == x on [0, edge], then x times a C^2 cutoff on [edge, edge+pad].
TestFn ramp_fn(double edge, double pad);

/// Max relative mismatch of f1/f2 against centered finite differences of
/// f0 on sample points; used by validity checks.
double derivative_check(const TestFn& fn, double h = 1e-5);

} // namespace qkin
