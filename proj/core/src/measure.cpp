#include "qkin/measure.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "qkin/quadrature.hpp"
#include "qkin/reduce.hpp"

namespace qkin {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kIso = 4.0 * kPi * std::sqrt(2.0);  // isotropic measure prefactor

// int_a^b (x-a)/(b-a) sqrt(x) dx
double rise_weight(double a, double b)
{
    const double f52 = 0.4 * (std::pow(b, 2.5) - std::pow(a, 2.5));
    const double f32 = (2.0 / 3.0) * (std::pow(b, 1.5) - std::pow(a, 1.5));
    return (f52 - a * f32) / (b - a);
}

// int_a^b (b-x)/(b-a) sqrt(x) dx
double fall_weight(double a, double b)
{
    const double f52 = 0.4 * (std::pow(b, 2.5) - std::pow(a, 2.5));
    const double f32 = (2.0 / 3.0) * (std::pow(b, 1.5) - std::pow(a, 1.5));
    return (b * f32 - f52) / (b - a);
}

double xlogx(double v)
{
    return v > 0.0 ? v * std::log(v) : 0.0;
}

// (1+u)log(1+u)/u, continuous with g(0)=1 and g(-1)=0
double g1p(double u)
{
    if (u == 0.0) return 1.0;
    if (u <= -1.0) return 0.0;
    return (1.0 + u) * std::log1p(u) / u;
}

/// support points of a measure: grid nodes carrying f_i * w_i plus atoms
struct Support {
    std::vector<double> coord;
    std::vector<double> mass;
};

Support support_points(const RadialMeasure& F)
{
    Support s;
    s.coord.reserve(F.grid.size() + F.atoms.size());
    s.mass.reserve(F.grid.size() + F.atoms.size());
    for (std::size_t i = 0; i < F.grid.size(); ++i) {
        s.coord.push_back(F.grid[i]);
        s.mass.push_back(F.density[i] * F.quad_weights[i]);
    }
    for (const auto& [loc, m] : F.atoms) {
        s.coord.push_back(loc);
        s.mass.push_back(m);
    }
    return s;
}

/// x-integral of W * delta_phi * weight(x) * sqrt(x) over [0, hi] with the
/// usual ridge splits; weight is any bounded evaluator (density interpolant).
double x_collision_integral(const QuantumProfile& q, const TestFn& phi,
                            double y, double z, double hi,
                            const std::function<double(double)>& weight,
                            const KernelQuadConfig& cfg, WCache* cache)
{
    if (hi <= 0.0) return 0.0;
    const double S = y + z;
    auto integrand = [&](double x) {
        const double wgt = weight(x);
        if (wgt == 0.0) return 0.0;
        const double d = delta_phi(phi, x, y, z);
        if (d == 0.0) return 0.0;
        return w_kernel(q, x, y, z, cfg, cache) * d * wgt * std::sqrt(x);
    };
    std::vector<double> pts{0.0, std::min(y, z), 0.5 * S, std::max(y, z), S, hi};
    const double rs = phi.support_radius;
    if (rs > 0.0 && rs < hi) pts.push_back(rs);
    if (S - rs > 0.0 && S - rs < hi) pts.push_back(S - rs);
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [hi](double v) { return v < 0.0 || v > hi; }),
              pts.end());
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
        if (i == 0) {
            auto g = [&](double u) { return 2.0 * u * integrand(u * u); };
            acc += integrate(g, std::sqrt(pts[0]), std::sqrt(pts[1]), opt).value;
        } else {
            acc += integrate(integrand, pts[i], pts[i + 1], opt).value;
        }
    }
    return acc;
}

} // namespace

std::vector<double> hat_sqrt_weights(const std::vector<double>& grid)
{
    const std::size_t n = grid.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) w[i] += rise_weight(grid[i - 1], grid[i]);
        if (i + 1 < n) w[i] += fall_weight(grid[i], grid[i + 1]);
    }
    return w;
}

std::vector<double> uniform_grid(double x_max, std::size_t n)
{
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 nodes");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = x_max * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

RadialMeasure RadialMeasure::on_grid(std::vector<double> grid,
                                     const std::function<double(double)>& f)
{
    RadialMeasure F;
    F.grid = std::move(grid);
    F.density.resize(F.grid.size());
    for (std::size_t i = 0; i < F.grid.size(); ++i)
        F.density[i] = f(F.grid[i]);
    F.recompute_weights();
    F.validate();
    return F;
}

RadialMeasure RadialMeasure::zero_on_grid(std::vector<double> grid)
{
    return on_grid(std::move(grid), [](double) { return 0.0; });
}

void RadialMeasure::recompute_weights() { quad_weights = hat_sqrt_weights(grid); }

void RadialMeasure::validate() const
{
    if (grid.size() != density.size() || grid.size() != quad_weights.size())
        throw std::invalid_argument("RadialMeasure: size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("RadialMeasure: grid must be strictly increasing");
    if (!grid.empty() && grid.front() < 0.0)
        throw std::invalid_argument("RadialMeasure: grid must start at x >= 0");
    for (double v : density)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("RadialMeasure: density must be finite and >= 0");
    for (const auto& [loc, m] : atoms) {
        if (loc < 0.0) throw std::invalid_argument("RadialMeasure: atom location must be >= 0");
        if (!(m > 0.0)) throw std::invalid_argument("RadialMeasure: atom mass must be > 0");
    }
}

double RadialMeasure::interp(double x) const
{
    if (grid.empty() || x < grid.front() || x > grid.back()) return 0.0;
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    if (it == grid.begin()) return density.front();
    if (it == grid.end()) return density.back();
    const std::size_t i = static_cast<std::size_t>(it - grid.begin());
    const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return (1.0 - t) * density[i - 1] + t * density[i];
}

RadialMeasure RadialMeasure::refined() const
{
    std::vector<double> g2;
    g2.reserve(grid.size() * 2);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        g2.push_back(grid[i]);
        g2.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    g2.push_back(grid.back());
    RadialMeasure F = on_grid(std::move(g2), [this](double x) { return interp(x); });
    F.atoms = atoms;
    return F;
}

void FermiState::validate() const
{
    measure.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("FermiState: eps must be > 0");
    if (measure.has_atoms())
        throw std::invalid_argument("FermiState: atoms are not admissible");
    const double cap = 1.0 / (eps * eps * eps);
    for (double v : measure.density)
        if (v > cap * (1.0 + 1e-12))
            throw std::invalid_argument("FermiState: density exceeds eps^-3");
}

double moment(const RadialMeasure& F, const std::function<double(double)>& phi)
{
    KahanSum s;
    for (std::size_t i = 0; i < F.grid.size(); ++i)
        s.add(F.quad_weights[i] * phi(F.grid[i]) * F.density[i]);
    for (const auto& [loc, m] : F.atoms)
        s.add(m * phi(loc));
    return s.value();
}

double moment(const RadialMeasure& F, const TestFn& phi)
{
    return moment(F, phi.f0);
}

std::pair<double, double> mass_energy(const RadialMeasure& F)
{
    return {moment(F, [](double) { return 1.0; }),
            moment(F, [](double x) { return x; })};
}

double entropy_classical(const RadialMeasure& F)
{
    if (F.has_atoms())
        throw std::invalid_argument("entropy_classical: undefined for measures with atoms");
    KahanSum s;
    for (std::size_t i = 0; i < F.grid.size(); ++i)
        s.add(F.quad_weights[i] * xlogx(F.density[i]));
    return kIso * s.value();
}

double entropy_quantum(const RadialMeasure& F, int lambda, double eps)
{
    if (lambda != -1 && lambda != 1)
        throw std::invalid_argument("entropy_quantum: lambda must be +-1");
    if (!(eps > 0.0)) throw std::invalid_argument("entropy_quantum: eps must be > 0");
    if (F.has_atoms())
        throw std::invalid_argument("entropy_quantum: undefined for measures with atoms");
    const double e3 = eps * eps * eps;
    const double cap = 1.0 / e3;
    KahanSum s;
    for (std::size_t i = 0; i < F.grid.size(); ++i) {
        const double f = F.density[i];
        if (lambda == -1 && f > cap * (1.0 + 1e-12))
            throw std::invalid_argument("entropy_quantum: Fermi-Dirac bound violated");
        const double u = lambda * e3 * std::min(f, lambda == -1 ? cap : f);
        // f log f - f * (1+u)log(1+u)/u
        s.add(F.quad_weights[i] * (xlogx(f) - f * g1p(u)));
    }
    return kIso * s.value();
}

double quadratic_form(const QuantumProfile& q, const TestFn& phi, const RadialMeasure& F,
                      const KernelQuadConfig& cfg, int threads, WCache* cache)
{
    const Support s = support_points(F);
    const std::size_t n = s.coord.size();
    return parallel_sum_ordered(n * n, threads, [&](std::size_t idx) {
        const std::size_t p = idx / n, r = idx % n;
        const double m = s.mass[p] * s.mass[r];
        if (m == 0.0) return 0.0;
        // J extended by continuity to the axes; both arguments zero gives 0
        if (s.coord[p] <= 0.0 && s.coord[r] <= 0.0) return 0.0;
        auto one = [](double) { return 1.0; };
        const double S = s.coord[p] + s.coord[r];
        const double j = 0.5 * x_collision_integral(q, phi, s.coord[p], s.coord[r], S,
                                                    one, cfg, cache);
        return m * j;
    });
}

double landau_form(const TestFn& phi, const RadialMeasure& F, int threads)
{
    const Support s = support_points(F);
    const std::size_t n = s.coord.size();
    return parallel_sum_ordered(n * n, threads, [&](std::size_t idx) {
        const std::size_t p = idx / n, r = idx % n;
        const double m = s.mass[p] * s.mass[r];
        if (m == 0.0) return 0.0;
        return m * landau_kernel(phi, s.coord[p], s.coord[r]);
    });
}

double cubic_form(const QuantumProfile& q, const TestFn& phi, const RadialMeasure& F,
                  const KernelQuadConfig& cfg, int threads, WCache* cache)
{
    if (q.lambda == 0) return 0.0;
    const Support s = support_points(F);
    const std::size_t n = s.coord.size();
    const double e3 = q.eps * q.eps * q.eps;

    auto density_weight = [&F](double x) { return F.interp(x); };

    const double total = parallel_sum_ordered(n * n, threads, [&](std::size_t idx) {
        const std::size_t p = idx / n, r = idx % n;
        const double m = s.mass[p] * s.mass[r];
        if (m == 0.0) return 0.0;
        const double y = s.coord[p], z = s.coord[r];
        const double S = y + z;
        double c = 0.0;
        // density part of the x-slot
        if (!F.grid.empty())
            c += x_collision_integral(q, phi, y, z, std::min(S, F.x_max()),
                                      density_weight, cfg, cache);
        // atom part of the x-slot
        for (const auto& [loc, ma] : F.atoms) {
            const double d = delta_phi(phi, loc, y, z);
            if (d != 0.0 && loc <= S)
                c += ma * w_kernel(q, loc, y, z, cfg, cache) * d;
        }
        return m * c;
    });
    return q.lambda * e3 * total;
}

} // namespace qkin
