#pragma once

#include <cstdint>
#include <stdexcept>

namespace qkin {

struct SphereMCConfig {
    long long samples = 1000000;
    std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
    int threads = 1;

    void validate() const {
        if (samples < 10000) throw std::invalid_argument("SphereMCConfig: samples must be >= 1e4");
    }
};

/// Closed form of the double sphere integral of |v - v_*|^{-3-alpha} at
/// v = sqrt(2y) w, v_* = sqrt(2z) w_*; valid for -1 < alpha < 1, y != z.
double sphere_inv_alpha(double y, double z, double alpha);

/// Same integral weighted by (1 - w.w_*)^2; finite for y == z as well.
double sphere_inv_alpha_weighted(double y, double z, double alpha);

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Fixed-seed Monte Carlo estimate of the sphere integrals above;
/// independent of the closed forms. Counter-based sampling in fixed-size
/// blocks reduced in block order, so the result is reproducible for any
/// thread count.
MCEstimate mc_sphere_integral(double y, double z, double alpha, bool weighted,
                              const SphereMCConfig& cfg);

/// W for a constant profile Phi == 1:
/// 16 pi^2 min{sqrt(x), sqrt(x_*), sqrt(y), sqrt(z)} / sqrt(xyz), zero
/// when x > y + z.
double w_constant_profile_oracle(double x, double y, double z);

/// Ratio of the assembled left side of the weighted sphere bound to
/// (y^{(1-a)/2} + z^{(1-a)/2})/(1-a); the grid maximum of this ratio
/// realizes the bound's constant.
double lemma42_bound_margin(double alpha, double y, double z);

} // namespace qkin
