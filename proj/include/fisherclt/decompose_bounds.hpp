#pragma once

// Step densities as exact mixtures of uniform densities, and explicit upper
// bounds on the Fisher information of sums of three independent summands.

#include "fisherclt/density_engine.hpp"
#include "fisherclt/rational.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace fisherclt {

/// Piecewise-constant density: values[k] on [breaks[k], breaks[k+1]).
struct StepDensity {
    std::vector<Rational> breaks;
    std::vector<Rational> values;

    /// Validates strictly increasing breaks, nonnegative values and unit mass.
    static StepDensity make(std::vector<Rational> breaks, std::vector<Rational> values);
    /// As make(), but rescales the values to unit mass first.
    static StepDensity normalized(std::vector<Rational> breaks, std::vector<Rational> values);

    int cells() const { return static_cast<int>(values.size()); }
    Rational mass() const;
    /// c_1 + sum |c_{k+1} - c_k| + c_n
    Rational total_variation() const;
    /// Right-continuous value at x.
    Rational operator()(const Rational& x) const;
};

struct UniformComponent {
    Rational a;
    Rational b;
    Rational weight;

    friend bool operator==(const UniformComponent&, const UniformComponent&) = default;
};

struct UniformMixture {
    std::vector<UniformComponent> components;

    Rational total_weight() const;
    /// sum_i w_i / (b_i - a_i) over components containing x in [a_i, b_i).
    Rational density_at(const Rational& x) const;
    /// sum_i w_i * 2 / (b_i - a_i)
    Rational total_variation() const;
};

/// Strips zero end cells, splits at interior zero cells and peels off the
/// minimum as one full-width uniform layer, recursively.
UniformMixture decompose_step_density(const StepDensity& p);

/// True when the mixture equals p on every cell, in exact arithmetic.
bool reconstructs(const UniformMixture& m, const StepDensity& p);

nlohmann::json to_json(const UniformMixture& m);

/// Reads lines "left,right,value" (rationals; commas or whitespace) describing
/// consecutive cells; '#' starts a comment. The result is normalized to unit mass.
StepDensity read_step_density(std::istream& in);
StepDensity read_step_density_file(const std::string& path);

/// Cell-midpoint sampling with spacing dx and zero padding on both sides.
GridDensity to_grid(const StepDensity& p, double dx, double pad);

/// 2 (1/(a1 a2) + 1/(a1 a3) + 1/(a2 a3)) for summands supported on intervals of lengths a_i.
double three_uniform_fisher_bound(double a1, double a2, double a3);

/// (T1 T2 + T1 T3 + T2 T3) / 2 with T_i the total variation norms.
double tv_product_fisher_bound(double tv1, double tv2, double tv3);
double tv_product_fisher_bound(const StepDensity& p1, const StepDensity& p2, const StepDensity& p3);
double tv_product_fisher_bound(const GridDensity& p1, const GridDensity& p2, const GridDensity& p3);

struct CfBound {
    double value = 0.0;
    bool applicable = false;
    std::string verdict;  // "ok" or "bound inapplicable: ..."
};

/// (1/2) int (|t f''| + 2|f'| + |t f|) dt, a bound on ||p||_TV.
CfBound cf_tv_bound_first(const CharFunctionGrid& f);

/// (int |t f|^2 dt int |(t f)'|^2 dt)^{1/4}, a bound on ||p||_TV.
CfBound cf_tv_bound_second(const CharFunctionGrid& f);

struct ThreeSumFisherBound {
    CfBound first;       // (3/8) (int (|t f''| + 2|f'| + |t f|))^2
    CfBound second;      // (3/2) (int |t f|^2 int |(t f)'|^2)^{1/2}
    double best = 0.0;   // minimum over applicable bounds, +inf if none
    bool applicable = false;
};

/// Fisher information bounds for X1 + X2 + X3 with X_i i.i.d. with cf f.
ThreeSumFisherBound three_sum_fisher_bound(const CharFunctionGrid& f);

nlohmann::json to_json(const CfBound& b);
nlohmann::json to_json(const ThreeSumFisherBound& b);

}  // namespace fisherclt
