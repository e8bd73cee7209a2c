#include "qkin/oracles.hpp"

#include <cmath>
#include <vector>

#include "qkin/rng.hpp"
#include "qkin/reduce.hpp"

namespace qkin {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double sphere_inv_alpha(double y, double z, double alpha)
{
    if (!(y > 0.0) || !(z > 0.0))
        throw std::invalid_argument("sphere_inv_alpha: y, z must be > 0");
    if (!(alpha > -1.0) || !(alpha < 1.0))
        throw std::invalid_argument("sphere_inv_alpha: alpha must be in (-1,1)");
    if (y == z)
        throw std::invalid_argument("sphere_inv_alpha: singular configuration y == z");

    const double sy = std::sqrt(y), sz = std::sqrt(z);
    if (alpha == 0.0)
        return 4.0 * kPi * kPi * std::sqrt(2.0) / (std::sqrt(std::max(y, z)) * std::abs(y - z));
    const double num = std::pow(sy + sz, 1.0 + alpha) - std::pow(std::abs(sy - sz), 1.0 + alpha);
    const double den = std::pow(2.0, 0.5 * (1.0 + alpha)) * (1.0 + alpha) * sy * sz
                       * std::pow(std::abs(y - z), 1.0 + alpha);
    return 4.0 * kPi * kPi * num / den;
}

double sphere_inv_alpha_weighted(double y, double z, double alpha)
{
    if (!(y > 0.0) || !(z > 0.0))
        throw std::invalid_argument("sphere_inv_alpha_weighted: y, z must be > 0");
    if (!(alpha > -1.0) || !(alpha < 1.0))
        throw std::invalid_argument("sphere_inv_alpha_weighted: alpha must be in (-1,1)");

    if (alpha == 0.0)
        return 8.0 * kPi * kPi * std::sqrt(2.0) / (3.0 * std::pow(std::max(y, z), 1.5));

    const double sy = std::sqrt(y), sz = std::sqrt(z);
    const double p = sy + sz, m = std::abs(sy - sz);
    const double c = std::pow(2.0, 0.5 * (3.0 + alpha)) * (1.0 - alpha * alpha);
    const double t1 = (std::pow(p, 3.0 - alpha) - std::pow(m, 3.0 - alpha))
                      / (c * (3.0 - alpha) * std::pow(y, 1.5) * std::pow(z, 1.5));
    const double t2 = (std::pow(p, 1.0 - alpha) + std::pow(m, 1.0 - alpha)) / (c * y * z);
    return 16.0 * kPi * kPi * (t1 - t2);
}

MCEstimate mc_sphere_integral(double y, double z, double alpha, bool weighted,
                              const SphereMCConfig& cfg)
{
    cfg.validate();
    if (!(y > 0.0) || !(z > 0.0))
        throw std::invalid_argument("mc_sphere_integral: y, z must be > 0");

    const double measure = (4.0 * kPi) * (4.0 * kPi);
    const double ry = std::sqrt(2.0 * y), rz = std::sqrt(2.0 * z);
    const double expo = -0.5 * (3.0 + alpha);

    const long long block_size = 1 << 14;
    const long long nblocks = (cfg.samples + block_size - 1) / block_size;

    std::vector<double> bsum(nblocks), bsq(nblocks);
    parallel_for(static_cast<std::size_t>(nblocks), cfg.threads, [&](std::size_t b) {
        // per-block counter stream: draw index identifies the sample
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b) * block_size * 4);
        const long long lo = static_cast<long long>(b) * block_size;
        const long long hi = std::min(lo + block_size, cfg.samples);
        KahanSum s, s2;
        for (long long i = lo; i < hi; ++i) {
            const UnitVec3 w = sample_sphere(rng);
            const UnitVec3 ws = sample_sphere(rng);
            const double dot = w.x * ws.x + w.y * ws.y + w.z * ws.z;
            const double d2 = ry * ry + rz * rz - 2.0 * ry * rz * dot;
            double g = std::pow(d2, expo);
            if (weighted) g *= (1.0 - dot * dot);
            s.add(g);
            s2.add(g * g);
        }
        bsum[b] = s.value();
        bsq[b] = s2.value();
    });

    KahanSum tot, tot2;
    for (long long b = 0; b < nblocks; ++b) { tot.add(bsum[b]); tot2.add(bsq[b]); }
    const double n = static_cast<double>(cfg.samples);
    const double mean = tot.value() / n;
    const double var = std::max(0.0, tot2.value() / n - mean * mean);
    return {measure * mean, measure * std::sqrt(var / n)};
}

double w_constant_profile_oracle(double x, double y, double z)
{
    if (x > y + z) return 0.0;
    const double xs = y + z - x;
    const double m = std::min(std::min(std::sqrt(x), std::sqrt(xs)),
                              std::min(std::sqrt(y), std::sqrt(z)));
    return 16.0 * kPi * kPi * m / std::sqrt(x * y * z);
}

double lemma42_bound_margin(double alpha, double y, double z)
{
    if (!(alpha >= 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("lemma42_bound_margin: alpha must be in [0,1)");
    if (y == 0.0 && z == 0.0)
        throw std::invalid_argument("lemma42_bound_margin: (y,z) must not both vanish");

    double lhs = 0.0;
    if (y > 0.0 && z > 0.0) {
        if (y != z) lhs += (y - z) * (y - z) * sphere_inv_alpha(y, z, alpha);
        lhs += y * z * sphere_inv_alpha_weighted(y, z, alpha);
    } else {
        // one argument zero: |v - v_*| = sqrt(2(y+z)) is constant
        const double w = y + z;
        lhs = w * w * (4.0 * kPi) * (4.0 * kPi) * std::pow(2.0 * w, -0.5 * (3.0 + alpha));
    }
    const double rhs = (std::pow(y, 0.5 * (1.0 - alpha)) + std::pow(z, 0.5 * (1.0 - alpha)))
                       / (1.0 - alpha);
    return lhs / rhs;
}

} // namespace qkin
