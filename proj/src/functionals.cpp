#include "fisherclt/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace fisherclt {

namespace {

FunctionalReport make_report(const std::string& name, const GridDensity& p, double threshold) {
    FunctionalReport r;
    r.functional = name;
    r.threshold = threshold;
    r.excluded_mass = (p.values <= threshold).select(p.values, 0.0).sum() * p.dx;
    r.x0 = p.x0;
    r.dx = p.dx;
    r.points = static_cast<long long>(p.size());
    r.clipped_mass = p.clipped_mass;
    return r;
}

double log_gaussian(double x, double a, double var) {
    return -0.5 * (x - a) * (x - a) / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
}

// Solves F_j + p_j s + c s^2 = target for s in [0, dx], c = (p_{j+1} - p_j) / (2 dx).
double cell_offset(double p_j, double c, double remaining, double dx) {
    if (remaining <= 0.0) return 0.0;
    double s = 0.0;
    if (std::abs(c) * dx < 1e-12 * std::max(p_j, 1e-300)) {
        s = remaining / p_j;
    } else {
        const double disc = std::max(0.0, p_j * p_j + 4.0 * c * remaining);
        s = 2.0 * remaining / (p_j + std::sqrt(disc));
    }
    return std::clamp(s, 0.0, dx);
}

// int_0^h L'^2 for the cell at a support end, where L - L(0) ~ C t^alpha
// with alpha possibly below 1; alpha is read off L(h) and L(2h).
double end_cell_square_slope(double l0, double l1, double l2, double h) {
    const double d1 = l1 - l0;
    const double d2 = l2 - l0;
    const double plain = d1 * d1 / h;
    if (!(d1 > 0.0) || !(d2 > d1)) return plain;
    const double alpha = std::log2(d2 / d1);
    if (!(alpha > 0.55 && alpha < 1.5)) return plain;
    return plain * alpha * alpha / (2.0 * alpha - 1.0);
}

// dx sum_i g_i over {p > thr}, plus half a cell at each end of an included run
// where the integrand is extrapolated linearly to the excluded neighbour. This
// keeps the sum trapezoidal when g has a nonzero limit at a support end.
template <class G>
double masked_sum(const GridDensity& p, double thr, G g) {
    const Eigen::Index n = p.size();
    const auto in = [&](Eigen::Index i) { return i >= 0 && i < n && p.values[i] > thr; };
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!in(i)) continue;
        const double gi = g(i);
        total += gi;
        for (const Eigen::Index step : {Eigen::Index{-1}, Eigen::Index{1}}) {
            if (i + step >= 0 && i + step < n && !in(i + step) && in(i - step)) {
                total += 0.5 * std::max(0.0, 2.0 * gi - g(i - step));
            }
        }
    }
    return total * p.dx;
}

}  // namespace

nlohmann::json to_json(const FunctionalReport& r) {
    return {{"functional", r.functional}, {"value", r.value},   {"threshold", r.threshold},
            {"excluded_mass", r.excluded_mass}, {"x0", r.x0}, {"dx", r.dx},
            {"points", r.points},          {"clipped_mass", r.clipped_mass}};
}

double positivity_threshold(const GridDensity& p, double rel) { return rel * p.max(); }

FunctionalReport fisher_information(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const Eigen::ArrayXd d = first_derivative(p);
    auto r = make_report("fisher_information", p, thr);
    r.value = masked_sum(p, thr, [&](Eigen::Index i) { return d[i] * d[i] / p.values[i]; });
    return r;
}

Eigen::ArrayXd score(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const Eigen::ArrayXd d = first_derivative(p);
    return (p.values > thr).select(d / p.values, std::numeric_limits<double>::quiet_NaN());
}

double expected_square_score(const GridDensity& p, const Eigen::ArrayXd& rho) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!std::isnan(rho[i])) total += rho[i] * rho[i] * p.values[i];
    }
    return total * p.dx;
}

FunctionalReport relative_fisher(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const double a = p.mean();
    const double var = p.variance();
    const Eigen::ArrayXd d = first_derivative(p);
    auto r = make_report("relative_fisher", p, thr);
    r.value = masked_sum(p, thr, [&](Eigen::Index i) {
        const double u = d[i] + (p.x(i) - a) / var * p.values[i];
        return u * u / p.values[i];
    });
    return r;
}

FunctionalReport entropic_distance(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const double a = p.mean();
    const double var = p.variance();
    double total = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double v = p.values[i];
        if (v > thr) total += v * (std::log(v) - log_gaussian(p.x(i), a, var));
    }
    auto r = make_report("entropic_distance", p, thr);
    r.value = total * p.dx;
    return r;
}

double total_variation_norm(const GridDensity& p) {
    const auto n = p.size();
    // values beyond the grid are zero
    double total = std::abs(p.values[0]) + std::abs(p.values[n - 1]);
    total += (p.values.tail(n - 1) - p.values.head(n - 1)).abs().sum();
    return total;
}

double tv_distance(const GridDensity& p, const GridDensity& q) {
    Eigen::ArrayXd diff(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) diff[i] = p.values[i] - interpolate(q, p.x(i));
    const auto n = diff.size();
    return std::abs(diff[0]) + std::abs(diff[n - 1]) + (diff.tail(n - 1) - diff.head(n - 1)).abs().sum();
}

double tv_distance_to_gaussian(const GridDensity& p) {
    const double a = p.mean();
    const double var = p.variance();
    Eigen::ArrayXd diff(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) diff[i] = p.values[i] - std::exp(log_gaussian(p.x(i), a, var));
    const auto n = diff.size();
    return std::abs(diff[0]) + std::abs(diff[n - 1]) + (diff.tail(n - 1) - diff.head(n - 1)).abs().sum();
}

double fisher_via_quantile(const GridDensity& p, int t_cells, double rel_threshold) {
    if (t_cells < 16) throw std::invalid_argument("fisher_via_quantile: need at least 16 t-cells");
    const double thr = positivity_threshold(p, rel_threshold);
    const Eigen::Index n = p.size();
    Eigen::Index lo = 0;
    while (lo < n && p.values[lo] <= thr) ++lo;
    Eigen::Index hi = n - 1;
    while (hi > lo && p.values[hi] <= thr) --hi;
    for (Eigen::Index i = lo; i <= hi; ++i) {
        if (p.values[i] <= thr) {
            throw NumericalError("quantile formula inapplicable: density vanishes inside its supporting interval");
        }
    }
    // p is taken piecewise linear on nodes first..last, so F is piecewise quadratic
    const Eigen::Index first = std::max<Eigen::Index>(0, lo - 1);
    const Eigen::Index last = std::min(n - 1, hi + 1);
    const double dx = p.dx;
    std::vector<double> F(static_cast<std::size_t>(last - first + 1), 0.0);
    for (Eigen::Index j = first; j < last; ++j) {
        F[static_cast<std::size_t>(j - first + 1)] =
            F[static_cast<std::size_t>(j - first)] + 0.5 * dx * (p.values[j] + p.values[j + 1]);
    }
    const double total = F.back();

    // L at t_k = k / t_cells, sweeping the cells monotonically
    std::vector<double> L(static_cast<std::size_t>(t_cells) + 1);
    Eigen::Index j = first;
    for (int k = 0; k <= t_cells; ++k) {
        const double target = total * static_cast<double>(k) / t_cells;
        while (j < last - 1 && F[static_cast<std::size_t>(j - first + 1)] < target) ++j;
        const double pj = p.values[j];
        const double pj1 = p.values[j + 1];
        const double c = (pj1 - pj) / (2.0 * dx);
        const double s = cell_offset(pj, c, target - F[static_cast<std::size_t>(j - first)], dx);
        L[static_cast<std::size_t>(k)] = (pj + (pj1 - pj) * s / dx) / total;
    }
    double integral = 0.0;
    const double h = 1.0 / t_cells;
    for (int k = 1; k + 1 < t_cells; ++k) {
        const double dL = L[static_cast<std::size_t>(k + 1)] - L[static_cast<std::size_t>(k)];
        integral += dL * dL / h;
    }
    integral += end_cell_square_slope(L[0], L[1], L[2], h);
    const auto K = static_cast<std::size_t>(t_cells);
    integral += end_cell_square_slope(L[K], L[K - 1], L[K - 2], h);
    return integral;
}

double fisher_via_second_derivative(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const Eigen::ArrayXd d2 = second_derivative(p);
    double total = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p.values[i] > thr) total -= d2[i] * std::log(p.values[i]);
    }
    return total * p.dx;
}

double second_order_fisher(const GridDensity& p, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const Eigen::ArrayXd d2 = second_derivative(p);
    return masked_sum(p, thr, [&](Eigen::Index i) { return d2[i] * d2[i] / p.values[i]; });
}

double weighted_derivative_norm(const GridDensity& p, double s) {
    const Eigen::ArrayXd d = first_derivative(p);
    return (p.grid().abs().pow(s) * d.abs()).sum() * p.dx;
}

std::string to_string(RefinementVerdict v) {
    switch (v) {
        case RefinementVerdict::converged: return "converged";
        case RefinementVerdict::diverging: return "diverging";
        case RefinementVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

RefinementVerdict classify_refinement(const std::vector<double>& values, double rel_tol) {
    if (values.size() < 3) throw std::invalid_argument("classify_refinement: need at least three resolutions");
    const std::size_t n = values.size();
    const double prev = values[n - 2] - values[n - 3];
    const double last = values[n - 1] - values[n - 2];
    if (!std::isfinite(values[n - 1])) return RefinementVerdict::diverging;
    if (std::abs(last) <= rel_tol * std::abs(values[n - 1])) return RefinementVerdict::converged;
    if (prev == 0.0) return RefinementVerdict::inconclusive;
    const double shrink = last / prev;
    if (std::abs(shrink) <= 0.6) return RefinementVerdict::converged;
    if (shrink >= 0.8) return RefinementVerdict::diverging;
    return RefinementVerdict::inconclusive;
}

RefinementStudy refinement_study(const std::function<GridDensity(int)>& build,
                                 const std::function<double(const GridDensity&)>& functional, int levels,
                                 double rel_tol) {
    if (levels < 3) throw std::invalid_argument("refinement_study: need at least three levels");
    std::vector<std::future<std::pair<double, double>>> jobs;
    for (int level = 0; level < levels; ++level) {
        jobs.push_back(std::async(std::launch::async, [&, level] {
            const GridDensity p = build(level);
            return std::pair{p.dx, functional(p)};
        }));
    }
    RefinementStudy out;
    for (auto& job : jobs) {
        const auto [dx, value] = job.get();
        out.dx.push_back(dx);
        out.values.push_back(value);
    }
    for (std::size_t i = 1; i < out.values.size(); ++i) out.ratios.push_back(out.values[i] / out.values[i - 1]);
    out.verdict = classify_refinement(out.values, rel_tol);
    return out;
}

nlohmann::json to_json(const RefinementStudy& s) {
    return {{"dx", s.dx}, {"values", s.values}, {"ratios", s.ratios}, {"verdict", to_string(s.verdict)}};
}

}  // namespace fisherclt
