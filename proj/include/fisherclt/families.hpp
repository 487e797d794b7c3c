#pragma once

// Built-in summand distributions. Every family is exposed in standardized
// form (mean 0, variance 1); the underlying "raw" law is only used to derive
// exact moments.

#include "fisherclt/rational.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fisherclt {

enum class FamilyKind {
    gaussian,
    standardized_exponential,
    standardized_uniform,
    beta33,
    two_point_mixture,
    gaussian_mixture,
};

struct Family {
    FamilyKind kind = FamilyKind::gaussian;
    // two_point_mixture: raw law is Bernoulli(p) on {0, 1}
    Rational p{1, 2};
    // gaussian_mixture: raw law sum_i w_i N(mu_i, sigma_i^2)
    std::vector<Rational> weights;
    std::vector<Rational> means;
    std::vector<Rational> sigmas;
    // filled by the factories so that cf and density evaluation stay in doubles
    double raw_mean = 0.0;
    double raw_sd = 1.0;
    std::vector<std::array<double, 3>> components;  // standardized (weight, mean, sigma)

    static Family of(FamilyKind k) {
        Family f;
        f.kind = k;
        return f;
    }
    static Family gaussian() { return of(FamilyKind::gaussian); }
    static Family exponential() { return of(FamilyKind::standardized_exponential); }
    static Family uniform() { return of(FamilyKind::standardized_uniform); }
    static Family beta33() { return of(FamilyKind::beta33); }
    static Family two_point(Rational p);
    static Family bernoulli() { return two_point(Rational(1, 2)); }
    static Family gaussian_mixture(std::vector<Rational> w, std::vector<Rational> mu, std::vector<Rational> sigma);

    /// Accepts the canonical tags (see tag()) plus a few aliases
    /// ("normal", "exponential", "uniform", "bernoulli").
    static Family parse(const std::string& text);

    /// Canonical tag, e.g. "gaussian_mixture:w=1/2,1/2;mu=-1,1;sigma=1/2,1/2".
    std::string tag() const;

    bool has_density() const { return kind != FamilyKind::two_point_mixture; }

    /// Mean and standard deviation of the raw law.
    std::pair<double, double> raw_location_scale() const;

    /// Exact raw moments E Y^r, r = 1..s, of the raw law.
    std::vector<Rational> raw_moments(int s) const;

    /// l-th derivative (l = 0, 1, 2) of the standardized characteristic function.
    std::complex<double> cf(double t, int l = 0) const;

    /// l-th derivative in t of f(t / sqrt(n))^n.
    std::complex<double> normalized_sum_cf(double t, int n, int l = 0) const;

    /// Standardized density and its first two derivatives (l = 0, 1, 2).
    /// Derivatives are the a.e. ones for densities with jumps.
    double density(double x, int l = 0) const;

    /// Closed support interval of the standardized law, infinite for Gaussian-type families.
    std::pair<double, double> support() const;
};

/// Integer power of a complex number by repeated squaring.
std::complex<double> ipow(std::complex<double> z, int n);

}  // namespace fisherclt
