#include "fisherclt/coefficients.hpp"

#include "gh_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fisherclt;
using Q = Rational;

namespace {

Q random_rational(std::mt19937_64& rng, int bound = 2) {
    std::uniform_int_distribution<int> den(1, 12);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-bound * d, bound * d);
    return Q(num(rng), d);
}

CumulantVector<Q> random_cumulants(std::mt19937_64& rng, int s) {
    std::vector<Q> higher;
    for (int r = 3; r <= s; ++r) higher.push_back(random_rational(rng));
    return CumulantVector<Q>::from_higher(higher);
}

std::vector<double> gamma_table(const CumulantVector<Q>& c) {
    std::vector<double> g{0.0};
    for (int r = 1; r <= c.order(); ++r) g.push_back(to_double(c(r)));
    return g;
}

const oracle::Quadrature& quadrature() {
    static const oracle::Quadrature q = oracle::gauss_hermite(200);
    return q;
}

}  // namespace

TEST(PhiWeighted, PowersAddAndIntegrationNeedsOne) {
    const PhiWeighted<Q> a{Poly<Q>{1}, 1};
    const auto sq = a * a;
    EXPECT_EQ(sq.phi_power, 2);
    EXPECT_THROW(integrate(sq), std::logic_error);
    EXPECT_EQ(integrate(sq.divided_by_phi(1)), Q(1));
}

TEST(ComputeCj, FirstCoefficientIsHalfGammaThreeSquared) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_cumulants(rng, 5);
        EXPECT_EQ(compute_cj(c, 1), c(3) * c(3) / 2);
    }
}

TEST(ComputeCj, SymmetricSecondCoefficient) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto higher = std::vector<Q>{Q(0), random_rational(rng), random_rational(rng)};
        const auto c = CumulantVector<Q>::from_higher(higher);
        EXPECT_EQ(compute_cj(c, 2), c(4) * c(4) / 6);
    }
}

TEST(ComputeCj, GaussianCumulantsGiveZero) {
    const auto c = CumulantVector<Q>::from_higher(std::vector<Q>(8, Q(0)));
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(compute_cj(c, j), Q(0));
}

TEST(ComputeCj, GenericVectorAgreesWithQuadrature) {
    const auto c = CumulantVector<Q>::from_higher({Q(1, 2), Q(1, 3), Q(1, 4)});
    const double exact = to_double(compute_cj(c, 2));
    EXPECT_NEAR(exact, oracle::cj_by_quadrature(gamma_table(c), 2, quadrature()), 1e-10);
}

TEST(ComputeCj, RandomVectorsAgreeWithQuadrature) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const auto c = random_cumulants(rng, 7);
        const auto g = gamma_table(c);
        for (int j = 1; j <= 3; ++j) {
            const double exact = to_double(compute_cj(c, j));
            const double quad = oracle::cj_by_quadrature(g, j, quadrature());
            EXPECT_NEAR(exact, quad, 1e-9 * std::max(1.0, std::abs(exact))) << "trial " << trial << " j " << j;
        }
    }
}

TEST(ComputeCj, ExponentialMatchesExactFisherInformation) {
    // Z_n is a standardized Gamma(n): I(Z_n || Z) = 2 / (n - 2) = sum_j 2^j n^{-j}
    const auto c = analytic_cumulants<Q>(Family::exponential(), 9);
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(compute_cj(c, j), Q(1 << j)) << j;
}

TEST(ComputeCj, UniformValues) {
    const auto c = analytic_cumulants<Q>(Family::uniform(), 7);
    EXPECT_EQ(compute_cj(c, 1), Q(0));
    EXPECT_EQ(compute_cj(c, 2), Q(6, 25));
}

TEST(ComputeCj, RequiresEnoughCumulants) {
    const auto c = CumulantVector<Q>::from_higher({Q(1), Q(2)});
    EXPECT_THROW(compute_cj(c, 2), std::invalid_argument);
    EXPECT_THROW(compute_cj(c, 0), std::invalid_argument);
    EXPECT_NO_THROW(compute_cj(c, 1));
}

TEST(ExpansionTerm, OddOrdersVanish) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_cumulants(rng, 8);
        for (int j : {3, 5, 7}) EXPECT_EQ(expansion_term(c, j), Q(0)) << j;
    }
}

TEST(ExpansionTerm, SeriesRouteAgrees) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_cumulants(rng, 9);
        for (int j = 2; j <= 8; ++j) EXPECT_EQ(expansion_term(c, j), expansion_term_series(c, j)) << j;
    }
}

TEST(ExpansionTerm, DoubleInstantiationTracksExact) {
    std::mt19937_64 rng(16);
    const auto c = random_cumulants(rng, 7);
    const auto cd = c.cast<double>();
    for (int j = 1; j <= 3; ++j) {
        const double exact = to_double(compute_cj(c, j));
        EXPECT_NEAR(compute_cj(cd, j), exact, 1e-12 * std::max(1.0, std::abs(exact)));
    }
}

TEST(LeadingCoefficient, Examples) {
    EXPECT_EQ(leading_coefficient(3, Q(2)), Q(2));
    EXPECT_EQ(leading_coefficient(4, Q(-6, 5)), Q(6, 25));
    EXPECT_EQ(leading_coefficient(6, Q(1)), Q(1, 120));
    EXPECT_THROW(leading_coefficient(2, Q(1)), std::invalid_argument);
}

TEST(LeadingCoefficient, MatchesExpansionWhenLowerCumulantsVanish) {
    std::mt19937_64 rng(17);
    for (int k : {4, 6}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Q> higher(static_cast<std::size_t>(k - 3), Q(0));
            Q gk = random_rational(rng);
            if (gk == 0) gk = Q(1, 3);
            higher.push_back(gk);
            while (static_cast<int>(higher.size()) < 2 * (k - 2) + 1 - 2) higher.push_back(random_rational(rng));
            const auto c = CumulantVector<Q>::from_higher(higher);
            for (int j = 1; j < k - 2; ++j) EXPECT_EQ(compute_cj(c, j), Q(0)) << "k=" << k << " j=" << j;
            EXPECT_EQ(compute_cj(c, k - 2), leading_coefficient(k, gk)) << "k=" << k;
        }
    }
}

TEST(ExpansionCoefficients, SizesAndPrediction) {
    const auto expo = compute_expansion_coefficients(analytic_cumulants<Q>(Family::exponential(), 4), 4);
    EXPECT_EQ(expo.J, 1);
    EXPECT_DOUBLE_EQ(predict_distance(expo, 100), 0.02);

    const auto unif = compute_expansion_coefficients(analytic_cumulants<Q>(Family::uniform(), 6), 6);
    EXPECT_EQ(unif.J, 2);
    EXPECT_NEAR(predict_distance(unif, 10), 0.0024, 1e-16);

    const auto none = compute_expansion_coefficients(analytic_cumulants<Q>(Family::exponential(), 3), 3);
    EXPECT_EQ(none.J, 0);
    EXPECT_EQ(predict_distance(none, 5), 0.0);
    EXPECT_THROW(predict_distance(expo, 0), std::invalid_argument);
    EXPECT_THROW(compute_expansion_coefficients(analytic_cumulants<Q>(Family::exponential(), 3), 5),
                 std::invalid_argument);
}
