#include "qkin/kernels.hpp"

#include <cmath>
#include <algorithm>
#include <vector>

namespace qkin {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline double clamp_pos(double u) { return u > 0.0 ? u : 0.0; }

} // namespace

void QuantumProfile::validate() const
{
    if (!(eps > 0.0)) throw std::invalid_argument("QuantumProfile: eps must be > 0");
    if (lambda != -1 && lambda != 0 && lambda != 1)
        throw std::invalid_argument("QuantumProfile: lambda must be in {-1,0,+1}");
}

void KernelQuadConfig::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("KernelQuadConfig: tolerances must be > 0");
    if (theta_points < 4 || s_points < 4)
        throw std::invalid_argument("KernelQuadConfig: panel counts must be >= 4");
}

WCache::Key WCache::make_key(double x, double y, double z)
{
    auto q = [](double v) { return static_cast<std::int64_t>(std::llround(v * 1e12)); };
    return {q(x), q(y), q(z)};
}

bool WCache::lookup(double x, double y, double z, double& out) const
{
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(make_key(x, y, z));
    if (it == map_.end()) return false;
    out = it->second;
    return true;
}

void WCache::store(double x, double y, double z, double v)
{
    std::lock_guard<std::mutex> lk(mu_);
    map_.emplace(make_key(x, y, z), v);
}

std::size_t WCache::size() const
{
    std::lock_guard<std::mutex> lk(mu_);
    return map_.size();
}

double phi_profile(const QuantumProfile& q, double r, double rho)
{
    if (r < 0.0 || rho < 0.0) throw std::invalid_argument("phi_profile: negative argument");
    const double ie = 1.0 / q.eps;
    const double ie4 = ie * ie * ie * ie;
    const double a = q.hat(r * ie);
    const double b = q.hat(rho * ie);
    if (q.lambda == 0) return ie4 * (a * a + b * b);
    const double s = a + q.lambda * b;
    return ie4 * s * s;
}

double y_star(double x, double y, double z, double s, double theta)
{
    if (s == 0.0) return 0.0;
    const double c = (x - y + s * s) / (2.0 * s);
    const double a = clamp_pos(z - c * c);
    const double b = clamp_pos(x - c * c);
    const double y2 = a + b + 2.0 * std::sqrt(a * b) * std::cos(theta);
    return std::sqrt(clamp_pos(y2));
}

namespace {

/// theta-integral of Phi(sqrt2 s, sqrt2 Y_*) over [0, 2pi]; Y_* depends
/// on theta only through cos(theta), so integrate [0, pi] and double.
double theta_integral(const QuantumProfile& q, double x, double y, double z, double s,
                      const KernelQuadConfig& cfg)
{
    const double ie = 1.0 / q.eps;
    const double ie4 = ie * ie * ie * ie;
    const double sq2 = std::sqrt(2.0);
    const double t1 = q.hat(sq2 * s * ie);

    const double c = (x - y + s * s) / (2.0 * s);
    const double a = clamp_pos(z - c * c);
    const double b = clamp_pos(x - c * c);
    const double apb = a + b;
    const double cross = 2.0 * std::sqrt(a * b);

    auto f = [&](double theta) {
        const double y2 = clamp_pos(apb + cross * std::cos(theta));
        const double t2 = q.hat(sq2 * std::sqrt(y2) * ie);
        if (q.lambda == 0) return ie4 * (t1 * t1 + t2 * t2);
        const double u = t1 + q.lambda * t2;
        return ie4 * u * u;
    };

    QuadOptions opt;
    opt.rel_tol = cfg.rel_tol * 0.3;
    opt.abs_tol = cfg.abs_tol * std::max(1.0, ie4) * 0.1;
    opt.max_depth = cfg.max_depth;

    // initial panels; Y_* is monotone in theta, spikes sit at theta = pi
    const int npan = std::max(cfg.theta_points / 2, 2);
    double acc = 0.0;
    for (int i = 0; i < npan; ++i) {
        const double lo = kPi * i / npan;
        const double hi = kPi * (i + 1) / npan;
        acc += integrate(f, lo, hi, opt).value;
    }
    return 2.0 * acc;
}

double w_positive(const QuantumProfile& q, double x, double y, double z,
                  const KernelQuadConfig& cfg)
{
    const double xs = y + z - x;
    if (xs <= 0.0) return 0.0;
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sxs = std::sqrt(xs);
    const double s_lo = std::max(std::abs(sx - sy), std::abs(sxs - sz));
    const double s_hi = std::min(sx + sy, sxs + sz);
    if (s_lo >= s_hi) return 0.0;

    // split where A+B peaks (c = 0): the Y_* dip can hide a narrow ridge
    std::vector<double> pts{s_lo, s_hi};
    if (y > x) {
        const double sstar = std::sqrt(y - x);
        if (sstar > s_lo && sstar < s_hi) pts.insert(pts.begin() + 1, sstar);
    }

    QuadOptions opt;
    opt.rel_tol = cfg.rel_tol;
    const double ie = 1.0 / q.eps;
    opt.abs_tol = cfg.abs_tol * std::max(1.0, ie * ie * ie);
    opt.max_depth = cfg.max_depth;

    double acc = 0.0;
    for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
        const double a = pts[seg], b = pts[seg + 1];
        const double len = b - a;
        // s = a + len*sin^2(psi) absorbs the square-root endpoint behavior
        auto g = [&](double psi) {
            const double sn = std::sin(psi);
            const double s = a + len * sn * sn;
            const double jac = len * std::sin(2.0 * psi);
            if (s <= 0.0) return 0.0;
            return jac * theta_integral(q, x, y, z, s, cfg);
        };
        const int npan = std::max(cfg.s_points / 2, 2);
        for (int i = 0; i < npan; ++i) {
            const double lo = 0.5 * kPi * i / npan;
            const double hi = 0.5 * kPi * (i + 1) / npan;
            acc += integrate(g, lo, hi, opt).value;
        }
    }
    return 4.0 * kPi / (sx * sy * sz) * acc;
}

} // namespace

double w_kernel(const QuantumProfile& q, double x, double y, double z,
                const KernelQuadConfig& cfg, WCache* cache)
{
    if (x < 0.0 || y < 0.0 || z < 0.0) throw std::invalid_argument("w_kernel: negative argument");
    if (cache) {
        double hit;
        if (cache->lookup(x, y, z, hit)) return hit;
    }

    const double btol = 1e-12 * (1.0 + y + z);
    const bool zx = x <= btol, zy = y <= btol, zz = z <= btol;
    double val;
    const double sq2 = std::sqrt(2.0);
    if (static_cast<int>(zx) + static_cast<int>(zy) + static_cast<int>(zz) >= 2) {
        val = 0.0;
    } else if (zx) {
        val = (4.0 * kPi) * (4.0 * kPi) / std::sqrt(y * z)
              * phi_profile(q, sq2 * std::sqrt(y), sq2 * std::sqrt(z));
    } else if (zy) {
        val = (z > x) ? (4.0 * kPi) * (4.0 * kPi) / std::sqrt(x * z)
                            * phi_profile(q, sq2 * std::sqrt(x), sq2 * std::sqrt(z - x))
                      : 0.0;
    } else if (zz) {
        val = (y > x) ? (4.0 * kPi) * (4.0 * kPi) / std::sqrt(x * y)
                            * phi_profile(q, sq2 * std::sqrt(y - x), sq2 * std::sqrt(x))
                      : 0.0;
    } else {
        val = w_positive(q, x, y, z, cfg);
    }

    if (cache) cache->store(x, y, z, val);
    return val;
}

double delta_phi(const TestFn& phi, double x, double y, double z)
{
    const double xs = clamp_pos(y + z - x);
    return phi(x) + phi(xs) - phi(y) - phi(z);
}

double k_functional(const QuantumProfile& q, const TestFn& phi,
                    double x, double y, double z,
                    const KernelQuadConfig& cfg, WCache* cache)
{
    const double d = delta_phi(phi, x, y, z);
    if (d == 0.0) return 0.0;
    return w_kernel(q, x, y, z, cfg, cache) * d;
}

double j_functional(const QuantumProfile& q, const TestFn& phi,
                    double y, double z,
                    const KernelQuadConfig& cfg, WCache* cache)
{
    if (!(y > 0.0) || !(z > 0.0))
        throw std::invalid_argument("j_functional: y and z must be > 0 (use continuity for the axes)");

    const double S = y + z;
    auto integrand = [&](double x) {
        const double d = delta_phi(phi, x, y, z);
        if (d == 0.0) return 0.0;
        return w_kernel(q, x, y, z, cfg, cache) * d * std::sqrt(x);
    };

    // kink/ridge locations of the x-integrand
    std::vector<double> pts{0.0, std::min(y, z), 0.5 * S, std::max(y, z), S};
    const double rs = phi.support_radius;
    if (rs > 0.0 && rs < S) pts.push_back(rs);
    if (S - rs > 0.0 && S - rs < S) pts.push_back(S - rs);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-14; }),
              pts.end());

    QuadOptions opt;
    opt.abs_tol = cfg.abs_tol;
    opt.rel_tol = cfg.rel_tol;
    opt.max_depth = cfg.max_depth;

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (i == 0) {
            // x = u^2 absorbs the sqrt weight near the origin
            auto g = [&](double u) { return 2.0 * u * integrand(u * u); };
            acc += integrate(g, std::sqrt(a), std::sqrt(b), opt).value;
        } else {
            acc += integrate(integrand, a, b, opt).value;
        }
    }
    return 0.5 * acc;
}

double landau_kernel(const TestFn& phi, double x, double y)
{
    const double hi = std::max(x, y);
    if (hi == 0.0) return 0.0;
    const double lo = std::min(x, y);
    const double sgn = (x > y) ? 1.0 : (x < y ? -1.0 : 0.0);
    return 4.0 * kPi / std::sqrt(hi)
           * ((2.0 / 3.0) * (phi.d2(x) + phi.d2(y)) * lo
              - (phi.d1(x) - phi.d1(y)) * sgn);
}

} // namespace qkin
