#pragma once

// Information functionals of grid densities.
//
// Points where p <= threshold are excluded from every integral; the default
// threshold is 1e-12 max p. Sums are plain Riemann sums over the grid, which
// coincide with the trapezoidal rule for densities vanishing at the grid ends.

#include "fisherclt/density_engine.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace fisherclt {

inline constexpr double kDefaultRelativeThreshold = 1e-12;

struct FunctionalReport {
    std::string functional;
    double value = 0.0;
    double threshold = 0.0;      // absolute positivity threshold used
    double excluded_mass = 0.0;  // mass on {p <= threshold}
    double x0 = 0.0;
    double dx = 0.0;
    long long points = 0;
    double clipped_mass = 0.0;
};

nlohmann::json to_json(const FunctionalReport& r);

/// Absolute threshold rel * max p.
double positivity_threshold(const GridDensity& p, double rel = kDefaultRelativeThreshold);

/// int p'^2 / p
FunctionalReport fisher_information(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// rho = p'/p on {p > threshold}, NaN elsewhere.
Eigen::ArrayXd score(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// E rho(X)^2 recomputed from a score table.
double expected_square_score(const GridDensity& p, const Eigen::ArrayXd& rho);

/// int (p'/p + (x - a)/sigma^2)^2 p against the Gaussian with the grid mean and variance.
FunctionalReport relative_fisher(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// int p log(p / phi_{a,sigma}), natural log.
FunctionalReport entropic_distance(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// sum |p(x_{i+1}) - p(x_i)|
double total_variation_norm(const GridDensity& p);

/// Variation norm of p - q, with q interpolated onto the grid of p.
double tv_distance(const GridDensity& p, const GridDensity& q);

/// Variation norm of p - phi_{a,sigma} (grid mean and variance of p).
double tv_distance_to_gaussian(const GridDensity& p);

/// int_0^1 L'(t)^2 dt with L = p(F^{-1}(t)). Throws NumericalError when p
/// vanishes inside its supporting interval.
double fisher_via_quantile(const GridDensity& p, int t_cells = 1 << 18,
                           double rel_threshold = kDefaultRelativeThreshold);

/// -int p'' log p
double fisher_via_second_derivative(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// int p''^2 / p
double second_order_fisher(const GridDensity& p, double rel_threshold = kDefaultRelativeThreshold);

/// int |x|^s |p'|
double weighted_derivative_norm(const GridDensity& p, double s);

enum class RefinementVerdict { converged, diverging, inconclusive };
std::string to_string(RefinementVerdict v);

struct RefinementStudy {
    std::vector<double> dx;
    std::vector<double> values;
    std::vector<double> ratios;  // values[i+1] / values[i]
    RefinementVerdict verdict = RefinementVerdict::inconclusive;
};

/// Classifies a sequence of functional values under successive grid halving:
/// increments shrinking geometrically (or a final relative change below
/// rel_tol) mean converged; increments that do not shrink mean diverging.
RefinementVerdict classify_refinement(const std::vector<double>& values, double rel_tol = 5e-3);

/// Evaluates `functional` on build(level), level = 0..levels-1, concurrently.
RefinementStudy refinement_study(const std::function<GridDensity(int)>& build,
                                 const std::function<double(const GridDensity&)>& functional, int levels = 3,
                                 double rel_tol = 5e-3);

nlohmann::json to_json(const RefinementStudy& s);

}  // namespace fisherclt
