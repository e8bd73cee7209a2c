#include "qkin/test_function.hpp"

#include <cmath>
#include <algorithm>

namespace qkin {

namespace {

// quintic smoothstep: s(0)=1, s(1)=0, s' = s'' = 0 at both ends
double sdown(double u)  { return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u); }
double sdown1(double u) { return -30.0 * u * u * (1.0 - u) * (1.0 - u); }
double sdown2(double u) { return -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u); }

} // namespace

TestFn bump_fn(double center, double halfwidth, double amp)
{
    const double c = center, h = halfwidth, A = amp;
    TestFn fn;
    fn.f0 = [c, h, A](double x) {
        const double t = (x - c) / h;
        if (std::abs(t) >= 1.0) return 0.0;
        const double q = 1.0 - t * t;
        return A * q * q * q;
    };
    fn.f1 = [c, h, A](double x) {
        const double t = (x - c) / h;
        if (std::abs(t) >= 1.0) return 0.0;
        const double q = 1.0 - t * t;
        return A * (-6.0 * t * q * q) / h;
    };
    fn.f2 = [c, h, A](double x) {
        const double t = (x - c) / h;
        if (std::abs(t) >= 1.0) return 0.0;
        const double q = 1.0 - t * t;
        return A * (q * (30.0 * t * t - 6.0)) / (h * h);
    };
    fn.support_radius = c + h;
    fn.sup_f2 = std::abs(A) * 6.0 / (h * h);   // |q''| peaks at t = 0
    fn.label = "bump";
    return fn;
}

TestFn plateau_fn(double edge, double pad)
{
    const double e = edge, p = pad;
    TestFn fn;
    fn.f0 = [e, p](double x) {
        if (x <= e) return 1.0;
        if (x >= e + p) return 0.0;
        return sdown((x - e) / p);
    };
    fn.f1 = [e, p](double x) {
        if (x <= e || x >= e + p) return 0.0;
        return sdown1((x - e) / p) / p;
    };
    fn.f2 = [e, p](double x) {
        if (x <= e || x >= e + p) return 0.0;
        return sdown2((x - e) / p) / (p * p);
    };
    fn.support_radius = e + p;
    fn.sup_f2 = 10.0 / (std::sqrt(3.0) * p * p);  // max |sdown''| = 60*u(1-u)(1-2u) peak
    fn.label = "plateau";
    return fn;
}

TestFn ramp_fn(double edge, double pad)
{
    const double e = edge, p = pad;
    TestFn fn;
    fn.f0 = [e, p](double x) {
        if (x <= e) return x;
        if (x >= e + p) return 0.0;
        return x * sdown((x - e) / p);
    };
    fn.f1 = [e, p](double x) {
        if (x <= e) return 1.0;
        if (x >= e + p) return 0.0;
        const double u = (x - e) / p;
        return sdown(u) + x * sdown1(u) / p;
    };
    fn.f2 = [e, p](double x) {
        if (x <= e || x >= e + p) return 0.0;
        const double u = (x - e) / p;
        return 2.0 * sdown1(u) / p + x * sdown2(u) / (p * p);
    };
    fn.support_radius = e + p;
    // coarse numerical sup over the taper (analytic max is not worth it here)
    double m = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = e + p * i / 400.0;
        m = std::max(m, std::abs(fn.f2(x)));
    }
    fn.sup_f2 = m;
    fn.label = "ramp";
    return fn;
}

double derivative_check(const TestFn& fn, double h)
{
    double worst = 0.0;
    const double R = fn.support_radius;
    for (int i = 1; i < 40; ++i) {
        const double x = R * i / 40.0;
        const double d1 = (fn.f0(x + h) - fn.f0(x - h)) / (2.0 * h);
        const double d2 = (fn.f0(x + h) - 2.0 * fn.f0(x) + fn.f0(x - h)) / (h * h);
        const double s1 = std::abs(fn.f1(x) - d1) / (1.0 + std::abs(d1));
        const double s2 = std::abs(fn.f2(x) - d2) / (1.0 + std::abs(d2));
        worst = std::max({worst, s1, s2});
    }
    return worst;
}

} // namespace qkin
