#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "qkin/quadrature.hpp"

namespace qkin {

/// Error category for profile pathologies (non-integrable tails,
/// unbounded growth, failed normalization, insufficient decay).
class ProfileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fourier-side interaction profile r -> phihat(r), r >= 0.
/// The profile must be continuous and bounded on compacts, with
/// sup r*|phihat(r)| finite and 2*pi*int r^3 phihat^2 convergent.
struct HatPotential {
    std::function<double(double)> eval;
    /// radius beyond which r*phihat(r) is monotone (needed for the
    /// physical-space reconstruction); unset if unknown
    std::optional<double> r_monotone_from;
    std::string label;

    double operator()(double r) const { return eval(r); }
};

/// Scalar value with its quadrature error bound.
struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

/// M = 2*pi * int_0^inf r^3 phihat(r)^2 dr, the diffusion normalization.
/// Throws ProfileError if the tail fails to decay.
ValueWithError diffusion_coefficient(const HatPotential& p, const QuadOptions& opt = {});

/// Rescales the profile so diffusion_coefficient == 1.
HatPotential normalize(const HatPotential& p, const QuadOptions& opt = {});

/// A = sup_{r>=0} r*|phihat(r)|, located by a log-spaced scan plus
/// golden-section refinement. Throws ProfileError if the scan still
/// grows at the largest tested radius.
double sup_linear_bound(const HatPotential& p);

/// A*(eps) = sup_{rho>=0} (sqrt(rho) ^ 1) * int_{rho/eps}^inf r^3 phihat^2 dr.
double tail_constant(const HatPotential& p, double eps, const QuadOptions& opt = {});

/// A*_alpha(eps) = sup_{rho>0} (sqrt(rho) ^ 1) * int_0^{rho/eps} (eps*r/rho)^alpha r^3 phihat^2 dr.
double moment_constant(const HatPotential& p, double eps, double alpha,
                       const QuadOptions& opt = {});

/// R_eps(z) = 1/(2 pi z^3) - int_0^{pi/2} (z cos^3 t sin t / eps^4) phihat(z cos t / eps)^2 dt.
double remainder(const HatPotential& p, double eps, double z, const QuadOptions& opt = {});

/// Physical-space potential phi(rho) = lim_{R->inf} 1/(2 pi^2 rho) int_0^R r phihat(r) sin(rho r) dr.
/// The cutoff is grown until the second-mean-value tail bound drops
/// below tol; the achieved bound is reported in .error.
ValueWithError reconstruct_potential(const HatPotential& p, double rho, double tol = 1e-8);

/// Built-in profile registry: "gaussian", "compact-bump", "exp".
HatPotential make_profile(const std::string& name, bool normalized);

} // namespace qkin
