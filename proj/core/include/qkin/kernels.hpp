#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "qkin/potential.hpp"
#include "qkin/test_function.hpp"

namespace qkin {

/// Quantum statistics selector together with the interaction profile and
/// the semi-classical parameter.
struct QuantumProfile {
    HatPotential hat;
    int lambda = -1;     // -1 Fermi-Dirac, +1 Bose-Einstein, 0 Maxwell-Boltzmann
    double eps = 1.0;    // > 0

    void validate() const;
};

/// Tolerances and budgets for the (s, theta, x) kernel quadratures.
struct KernelQuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-6;
    int max_depth = 30;
    int theta_points = 4;   // initial panels on [0, 2pi]
    int s_points = 4;       // initial panels on the s-interval

    void validate() const;
};

/// Memoizes W evaluations per (x,y,z) tuple, quantized at 1e-12.
/// Insertion is mutex-guarded so concurrent batch evaluation stays safe.
class WCache {
public:
    bool lookup(double x, double y, double z, double& out) const;
    void store(double x, double y, double z, double v);
    std::size_t size() const;

private:
    struct Key {
        std::int64_t a, b, c;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 1469598103934665603ULL;
            for (std::uint64_t v : {static_cast<std::uint64_t>(k.a),
                                    static_cast<std::uint64_t>(k.b),
                                    static_cast<std::uint64_t>(k.c)}) {
                h ^= v;
                h *= 1099511628211ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };
    static Key make_key(double x, double y, double z);

    mutable std::mutex mu_;
    std::unordered_map<Key, double, KeyHash> map_;
};

/// Phi_lambda^eps(r, rho): squared-sum profile for lambda = +-1, sum of
/// squares for lambda = 0.
double phi_profile(const QuantumProfile& q, double r, double rho);

/// Y_*(x,y,z,s,theta) = | sqrt((z - c^2)_+) + e^{i theta} sqrt((x - c^2)_+) |
/// with c = (x - y + s^2) / (2s); equals 0 at s = 0.
double y_star(double x, double y, double z, double s, double theta);

/// W_Phi(x,y,z): reduced three-energy collision kernel. Positive
/// arguments use the (s,theta) double integral; one vanishing argument
/// uses the closed boundary forms; two or more vanishing arguments give 0.
double w_kernel(const QuantumProfile& q, double x, double y, double z,
                const KernelQuadConfig& cfg, WCache* cache = nullptr);

/// delta_phi = phi(x) + phi((y+z-x)_+) - phi(y) - phi(z).
double delta_phi(const TestFn& phi, double x, double y, double z);

/// K[phi](x,y,z) = W(x,y,z) * delta_phi(x,y,z).
double k_functional(const QuantumProfile& q, const TestFn& phi,
                    double x, double y, double z,
                    const KernelQuadConfig& cfg, WCache* cache = nullptr);

/// J[phi](y,z) = 1/2 int_0^{y+z} K[phi](x,y,z) sqrt(x) dx, y,z > 0.
double j_functional(const QuantumProfile& q, const TestFn& phi,
                    double y, double z,
                    const KernelQuadConfig& cfg, WCache* cache = nullptr);

/// Landau weak-form kernel
/// L[phi](x,y) = 4pi/sqrt(x v y) * ( (2/3)(phi''(x)+phi''(y))(x ^ y)
///                                   - (phi'(x)-phi'(y)) sgn(x-y) ),
/// with L(0,0) = 0 and sgn(0) = 0.
double landau_kernel(const TestFn& phi, double x, double y);

} // namespace qkin
