#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qkin/kernels.hpp"
#include "qkin/test_function.hpp"

namespace qkin {

/// Isotropic state on [0, X_max]: a density interpreted against
/// sqrt(x) dx carried by piecewise-linear hat functions on the grid,
/// plus optional point atoms. quad_weights[i] = int hat_i(x) sqrt(x) dx,
/// computed in closed form; they reproduce int sqrt(x) dx and
/// int x sqrt(x) dx over the grid span exactly.
struct RadialMeasure {
    std::vector<double> grid;                     // strictly increasing nodes
    std::vector<double> density;                  // f_i >= 0 at nodes
    std::vector<std::pair<double, double>> atoms; // (location >= 0, mass > 0)
    std::vector<double> quad_weights;

    static RadialMeasure on_grid(std::vector<double> grid,
                                 const std::function<double(double)>& f);
    static RadialMeasure zero_on_grid(std::vector<double> grid);

    void recompute_weights();
    void validate() const;
    double x_max() const { return grid.empty() ? 0.0 : grid.back(); }
    std::size_t nodes() const { return grid.size(); }
    bool has_atoms() const { return !atoms.empty(); }

    /// piecewise-linear interpolant of the density (0 outside the grid span)
    double interp(double x) const;

    /// same density resampled on a grid with doubled resolution
    RadialMeasure refined() const;
};

/// closed-form hat-basis sqrt(x) weights for an increasing node set
std::vector<double> hat_sqrt_weights(const std::vector<double>& grid);

/// uniform grid 0..x_max with n nodes
std::vector<double> uniform_grid(double x_max, std::size_t n);

/// Fermi-Dirac state: density-only measure with the hard bound f <= eps^-3.
struct FermiState {
    RadialMeasure measure;
    double eps = 1.0;

    void validate() const;
};

double moment(const RadialMeasure& F, const std::function<double(double)>& phi);
double moment(const RadialMeasure& F, const TestFn& phi);

/// (int dF, int x dF)
std::pair<double, double> mass_energy(const RadialMeasure& F);

/// H = 4 pi sqrt(2) * int f log f sqrt(x) dx with 0 log 0 = 0.
/// Undefined (throws) when atoms are present.
double entropy_classical(const RadialMeasure& F);

/// H_{lambda eps^3} = 4 pi sqrt2 int [f log f - (1/(l e^3))(1+l e^3 f)log(1+l e^3 f)] sqrt(x) dx.
/// lambda = -1 requires f <= eps^-3.
double entropy_quantum(const RadialMeasure& F, int lambda, double eps);

/// Quadratic collision form: int int J[phi](y,z) dF(y) dF(z), grid and
/// atom supports combined. J on the axes uses the continuity extension.
double quadratic_form(const QuantumProfile& q, const TestFn& phi, const RadialMeasure& F,
                      const KernelQuadConfig& cfg, int threads = 1, WCache* cache = nullptr);

/// int int L[phi] dF dF.
double landau_form(const TestFn& phi, const RadialMeasure& F, int threads = 1);

/// Cubic correction lambda eps^3 * int^3 K[phi] dF^3. The x-slot is
/// integrated adaptively against the interpolated density (plus atom
/// point terms); the (y,z) slots use the measure's support points.
/// Returns 0 for lambda = 0.
double cubic_form(const QuantumProfile& q, const TestFn& phi, const RadialMeasure& F,
                  const KernelQuadConfig& cfg, int threads = 1, WCache* cache = nullptr);

} // namespace qkin
