#include "qkin/potential.hpp"

#include <cmath>
#include <vector>
#include <algorithm>

namespace qkin {

namespace {

constexpr double kPi = 3.14159265358979323846;

double tail_integral(const HatPotential& p, double from, const QuadOptions& opt)
{
    auto g = [&p](double r) { const double v = p(r); return r * r * r * v * v; };
    QuadResult q = integrate_to_infinity(g, from, opt);
    if (!q.converged)
        throw ProfileError("profile tail does not decay: int r^3 phihat^2 diverges");
    return q.value;
}

/// Dyadic-block integration of f over [a,b]; robust when the integrand
/// lives on a sliver of a long interval (a single adaptive pass would
/// sample right past it).
double integrate_blocked(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt)
{
    double acc = 0.0;
    double lo = a, width = 1.0;
    double prev = 1e300;
    while (lo < b) {
        const double hi = std::min(lo + width, b);
        QuadResult q = integrate(f, lo, hi, opt);
        acc += q.value;
        const double mag = std::abs(q.value);
        if (mag < std::max(opt.abs_tol, opt.rel_tol * std::abs(acc)) * 0.25 && mag < prev && lo > a + 4.0)
            break;
        prev = std::max(mag, 1e-300);
        lo = hi;
        width *= 2.0;
    }
    return acc;
}

/// log-spaced scan + local golden refinement for sup over rho of
/// (sqrt(rho) ^ 1) * inner(rho). The maximand is continuous; only the
/// value is needed, so a coarse bracket plus refinement is enough.
double sup_over_rho(const std::function<double(double)>& h)
{
    const int n = 128;
    const double lo = 1e-4, hi = 1e4;
    double best = 0.0;
    int best_i = -1;
    std::vector<double> rho(n), val(n);
    for (int i = 0; i < n; ++i) {
        rho[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        val[i] = h(rho[i]);
        if (val[i] > best) { best = val[i]; best_i = i; }
    }
    if (best_i < 0) return 0.0;
    const double a = rho[std::max(0, best_i - 1)];
    const double b = rho[std::min(n - 1, best_i + 1)];
    const double refined = maximize_golden(h, a, b, 1e-10);
    return std::max(best, refined);
}

} // namespace

ValueWithError diffusion_coefficient(const HatPotential& p, const QuadOptions& opt)
{
    auto g = [&p](double r) { const double v = p(r); return r * r * r * v * v; };
    QuadResult q = integrate_to_infinity(g, 0.0, opt);
    if (!q.converged)
        throw ProfileError("profile tail does not decay: M diverges");
    return {2.0 * kPi * q.value, 2.0 * kPi * q.error};
}

HatPotential normalize(const HatPotential& p, const QuadOptions& opt)
{
    const double m = diffusion_coefficient(p, opt).value;
    if (!(m > 0.0) || !std::isfinite(m))
        throw ProfileError("cannot normalize: M is zero or non-finite");
    const double scale = 1.0 / std::sqrt(m);
    HatPotential out;
    auto f = p.eval;
    out.eval = [f, scale](double r) { return scale * f(r); };
    out.r_monotone_from = p.r_monotone_from;
    out.label = p.label.empty() ? "normalized" : p.label + "/normalized";
    return out;
}

double sup_linear_bound(const HatPotential& p)
{
    auto g = [&p](double r) { return r * std::abs(p(r)); };
    const int n = 256;
    const double lo = 1e-6, hi = 1e6;
    double best = 0.0;
    int best_i = -1;
    std::vector<double> rs(n);
    for (int i = 0; i < n; ++i) {
        rs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        const double v = g(rs[i]);
        if (v > best) { best = v; best_i = i; }
    }
    if (best_i == n - 1 && g(hi * 4.0) > best)
        throw ProfileError("r*|phihat(r)| still grows at the largest tested radius");
    if (best_i < 0) return 0.0;
    const double a = rs[std::max(0, best_i - 1)];
    const double b = rs[std::min(n - 1, best_i + 1)];
    return std::max(best, maximize_golden(g, a, b, 1e-9));
}

double tail_constant(const HatPotential& p, double eps, const QuadOptions& opt)
{
    if (!(eps > 0.0)) throw std::invalid_argument("tail_constant: eps must be > 0");
    auto h = [&](double rho) {
        const double w = std::min(std::sqrt(rho), 1.0);
        if (w == 0.0) return 0.0;
        return w * tail_integral(p, rho / eps, opt);
    };
    return sup_over_rho(h);
}

double moment_constant(const HatPotential& p, double eps, double alpha, const QuadOptions& opt)
{
    if (!(eps > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("moment_constant: eps and alpha must be > 0");
    auto h = [&](double rho) {
        const double w = std::min(std::sqrt(rho), 1.0);
        const double upper = rho / eps;
        auto g = [&](double r) {
            const double v = p(r);
            return std::pow(eps * r / rho, alpha) * r * r * r * v * v;
        };
        return w * integrate_blocked(g, 0.0, upper, opt);
    };
    return sup_over_rho(h);
}

double remainder(const HatPotential& p, double eps, double z, const QuadOptions& opt)
{
    if (!(z > 0.0)) throw std::invalid_argument("remainder: z must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("remainder: eps must be > 0");
    auto g = [&](double theta) {
        const double c = std::cos(theta);
        const double v = p(z * c / eps);
        return z * c * c * c * std::sin(theta) / (eps * eps * eps * eps) * v * v;
    };
    QuadResult q = integrate(g, 0.0, 0.5 * kPi, opt);
    return 1.0 / (2.0 * kPi * z * z * z) - q.value;
}

ValueWithError reconstruct_potential(const HatPotential& p, double rho, double tol)
{
    if (!(rho > 0.0)) throw std::invalid_argument("reconstruct_potential: rho must be > 0");
    if (!p.r_monotone_from)
        throw ProfileError("reconstruct_potential requires r_monotone_from");

    const double r0 = *p.r_monotone_from;
    const double pref = 1.0 / (2.0 * kPi * kPi * rho);

    // choose the cutoff: beyond r0 the function r*phihat(r) is monotone
    // and tends to 0, so |int_R^inf r phihat sin(rho r) dr| <= (4/rho) |R phihat(R)|
    double R = std::max(r0, 1.0) * 2.0;
    double bound;
    for (;;) {
        bound = pref * (4.0 / rho) * std::abs(R * p(R));
        if (bound <= tol) break;
        if (R > 1e8)
            throw ProfileError("reconstruct_potential: tail bound exceeds tolerance at the cutoff limit");
        R *= 2.0;
    }

    // half-period blocks: each lobe of sin(rho r) integrated by one
    // adaptive pass, summed in order
    auto g = [&](double r) { return r * p(r) * std::sin(rho * r); };
    const double half = kPi / rho;
    QuadOptions opt;
    opt.abs_tol = tol * rho * 0.5;  // tolerance on the r-integral itself
    opt.rel_tol = 1e-10;
    double acc = 0.0, qerr = 0.0;
    double a = 0.0;
    while (a < R) {
        const double b = std::min(a + half, R);
        QuadResult q = integrate(g, a, b, opt);
        acc += q.value;
        qerr += q.error;
        a = b;
    }
    return {pref * acc, bound + pref * qerr};
}

HatPotential make_profile(const std::string& name, bool normalized)
{
    HatPotential p;
    if (name == "gaussian") {
        p.eval = [](double r) { return std::exp(-0.5 * r * r); };
        p.r_monotone_from = 1.0;
        p.label = "gaussian";
    } else if (name == "exp") {
        p.eval = [](double r) { return std::exp(-r); };
        p.r_monotone_from = 1.0;
        p.label = "exp";
    } else if (name == "compact-bump") {
        // smooth bump supported in [0,2]
        p.eval = [](double r) {
            const double t = 0.5 * r;
            if (t >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - t * t));
        };
        p.r_monotone_from = 2.0;
        p.label = "compact-bump";
    } else {
        throw std::invalid_argument("unknown profile: " + name);
    }
    return normalized ? normalize(p) : p;
}

} // namespace qkin
