#pragma once

// Grid densities and characteristic functions: sampling, Fourier inversion of
// f_n(t) = f_1(t / sqrt n)^n with spectral derivatives, convolution and the
// cf decay diagnostics.

#include "fisherclt/families.hpp"

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fisherclt {

/// A numerical precondition was not met (cf tail, inapplicable formula, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int N = 1 << 16;
    double xmax = 40.0;  // grid covers [-xmax, xmax)

    double dx() const { return 2.0 * xmax / N; }
};

/// Density sampled at x_i = x0 + i dx. d1 and d2 hold exact (analytic or
/// spectral) derivatives when the construction provides them.
struct GridDensity {
    double x0 = 0.0;
    double dx = 1.0;
    Eigen::ArrayXd values;
    std::optional<Eigen::ArrayXd> d1;
    std::optional<Eigen::ArrayXd> d2;
    double clipped_mass = 0.0;

    Eigen::Index size() const { return values.size(); }
    double x(Eigen::Index i) const { return x0 + static_cast<double>(i) * dx; }
    Eigen::ArrayXd grid() const;

    double mass() const { return values.sum() * dx; }
    double mean() const;
    double variance() const;
    double absolute_moment(double s) const;  // E |X|^s
    double max() const { return values.maxCoeff(); }
};

/// Characteristic function on t_m = -tmax + m dt. When `family` is set the
/// values are f_family(t / sqrt n)^n and off-grid evaluation is exact;
/// otherwise evaluation interpolates the stored grids.
struct CharFunctionGrid {
    double tmax = 0.0;
    double dt = 1.0;
    Eigen::ArrayXcd values;
    std::optional<Eigen::ArrayXcd> d1;
    std::optional<Eigen::ArrayXcd> d2;
    std::optional<Family> family;
    int n = 1;

    Eigen::Index size() const { return values.size(); }
    double t(Eigen::Index m) const { return -tmax + static_cast<double>(m) * dt; }
    bool analytic() const { return family.has_value(); }

    /// l-th derivative (0, 1, 2) at an arbitrary t.
    std::complex<double> operator()(double t, int l = 0) const;
};

// ---- construction -----------------------------------------------------------

GridDensity sample_function(const std::function<double(double)>& p, double x0, double dx, Eigen::Index count,
                            const std::function<double(double)>& dp = {}, const std::function<double(double)>& d2p = {});

/// Density of a built-in family on the default symmetric grid, with analytic derivatives.
GridDensity sample_family(const Family& family, const GridSpec& spec = {});

/// U[a, b] sampled at cell midpoints of width dx, padded by `pad` on both sides.
GridDensity uniform_density(double a, double b, double dx, double pad);

/// N(mean, sd^2) on the given grid, with analytic derivatives.
GridDensity gaussian_density(double mean, double sd, const GridSpec& spec = {});

/// Zero-pads symmetrically until the mass outside the central 90% of the grid is below 1e-6.
GridDensity widen_for_tails(GridDensity p);

/// Clips negative values (recording the clipped mass) and rescales to unit mass.
GridDensity normalize(GridDensity p);

/// p' and p'': stored exact derivatives when present, central differences otherwise.
Eigen::ArrayXd first_derivative(const GridDensity& p);
Eigen::ArrayXd second_derivative(const GridDensity& p);

/// Linear interpolation of the values at an arbitrary x (0 outside the grid).
double interpolate(const GridDensity& p, double x);

/// Resamples onto spacing dx by linear interpolation; derivatives are dropped.
GridDensity resample(const GridDensity& p, double dx);

/// Density of a X + b.
GridDensity affine_image(const GridDensity& p, double a, double b);

/// Affine rescaling to zero mean and unit variance.
GridDensity standardize(const GridDensity& p);

/// sum_i w_i p_i for densities on one common grid.
GridDensity mixture(const std::vector<GridDensity>& parts, const std::vector<double>& weights);

/// Density of the sum of independent variables with densities p and q.
GridDensity convolve(const GridDensity& p, const GridDensity& q);

// ---- characteristic functions -----------------------------------------------

CharFunctionGrid cf_from_family(const Family& family, double tmax = 200.0, double dt = 0.01);

/// Grid cf of a grid density on t_m = m 2 pi / (N dx), with spectral derivatives.
CharFunctionGrid cf_from_density(const GridDensity& p);

/// f(t) of a grid density at a single t by direct summation (l = 0, 1, 2).
std::complex<double> cf_at(const GridDensity& p, double t, int l = 0);

/// Pointwise f_1(t / sqrt n)^n. Grid-only inputs are interpolated, which
/// amplifies interpolation error about n-fold; that is refused for n > 32
/// unless allow_grid_power is set.
CharFunctionGrid normalized_sum_cf(const CharFunctionGrid& f1, int n, bool allow_grid_power = false);

/// Table of p^{(l)}(x_k), x_k = -xmax + k dx, by discrete Fourier inversion of
/// (-it)^l f(t). Throws NumericalError when the cf tail at the grid edge is
/// not negligible.
Eigen::ArrayXd invert_cf(const CharFunctionGrid& f, int l, const GridSpec& spec = {});

/// Density with spectral first and second derivatives; negative lobes are clipped.
GridDensity density_from_cf(const CharFunctionGrid& f, const GridSpec& spec = {});

// ---- decay diagnostics ------------------------------------------------------

/// Least-squares slope of log sup_{tau >= t} |f(tau)| against -log t over the
/// window. Returns +infinity when |f| underflows inside the window.
double decay_exponent(const CharFunctionGrid& f, std::pair<double, double> window);

struct WeightedCfIntegral {
    double value = 0.0;  // grid integral plus power-law tail (infinite when divergent)
    double grid_part = 0.0;
    double exponent = 0.0;
    bool finite = false;
};

/// int |f(t)|^nu |t| dt with a tail extrapolated from the decay exponent.
WeightedCfIntegral weighted_cf_integral(const CharFunctionGrid& f, double nu,
                                        std::optional<std::pair<double, double>> window = std::nullopt);

/// Default decay window (max(1, tmax / 100), tmax / 2).
std::pair<double, double> default_decay_window(const CharFunctionGrid& f);

// ---- CSV --------------------------------------------------------------------

void write_density_csv(std::ostream& out, const GridDensity& p);
GridDensity read_density_csv(std::istream& in);
void write_cf_csv(std::ostream& out, const CharFunctionGrid& f);
CharFunctionGrid read_cf_csv(std::istream& in);

}  // namespace fisherclt
