#include "fisherclt/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace fisherclt;
using Q = Rational;

namespace {

const InequalityCheck* find_check(const InequalityReport& r, const std::string& name, int n) {
    for (const auto& c : r.checks) {
        if (c.name == name && c.n == n) return &c;
    }
    return nullptr;
}

GridDensity exponential_sum(int n) { return density_from_cf(normalized_sum_cf(cf_from_family(Family::exponential()), n)); }

}  // namespace

TEST(ConvergenceStudy, ExponentialMatchesExactRelativeFisher) {
    StudyConfig cfg;  // exponential, s = 4, n = 64..512
    const auto rows = run_convergence_study(cfg);
    ASSERT_EQ(rows.size(), 4u);
    double previous_gap = INFINITY;
    for (const auto& row : rows) {
        ASSERT_FALSE(row.skipped()) << row.status;
        const double n = row.n;
        // standardized Gamma(n): I(Z_n || Z) = 2 / (n - 2)
        EXPECT_NEAR(row.I_rel, 2.0 / (n - 2.0), 1e-8) << row.n;
        EXPECT_GE(n * row.I_rel, 1.8);
        EXPECT_LE(n * row.I_rel, 2.2);
        const double gap = std::abs(n * row.I_rel - 2.0);
        EXPECT_LT(gap, previous_gap);
        previous_gap = gap;
        EXPECT_DOUBLE_EQ(row.prediction, 2.0 / n);
        EXPECT_NEAR(row.residual_scaled, 4.0 / (n - 2.0), 1e-6) << row.n;
        EXPECT_NEAR(row.variance, 1.0, 1e-8);
        EXPECT_GT(row.D_rel, 0.0);
        EXPECT_LE(row.D_rel, 0.5 * row.I_rel + 1e-8);
        EXPECT_LT(row.tail_share, 0.05);
        EXPECT_DOUBLE_EQ(row.T_n, tail_cutoff(row.n, 4));
    }
}

TEST(ConvergenceStudy, GaussianHasNoCorrection) {
    StudyConfig cfg;
    cfg.family = Family::gaussian();
    cfg.n_list = {8, 16};
    for (const auto& row : run_convergence_study(cfg)) {
        EXPECT_LT(row.I_rel, 1e-8);
        EXPECT_EQ(row.prediction, 0.0);
    }
}

TEST(ConvergenceStudy, UniformSecondOrderRate) {
    StudyConfig cfg;
    cfg.family = Family::uniform();
    cfg.s = 6;
    cfg.n_list = {64, 128};
    const auto rows = run_convergence_study(cfg);
    const double c2 = 6.0 / 25.0;
    const double e64 = std::abs(64.0 * 64.0 * rows[0].I_rel - c2);
    const double e128 = std::abs(128.0 * 128.0 * rows[1].I_rel - c2);
    EXPECT_LT(e64, 0.15 * c2);
    EXPECT_LT(e128, e64);
    EXPECT_DOUBLE_EQ(rows[0].prediction, c2 / (64.0 * 64.0));
}

TEST(ConvergenceStudy, SkipsRowsWithoutSmoothing) {
    StudyConfig cfg;
    cfg.family = Family::uniform();
    cfg.n_list = {1, 2, 8};
    const auto rows = run_convergence_study(cfg);
    EXPECT_TRUE(rows[0].skipped());
    EXPECT_EQ(rows[0].status.rfind("skipped: insufficient smoothing", 0), 0u);
    EXPECT_FALSE(rows[2].skipped());
    std::ostringstream csv;
    write_study_csv(csv, rows);
    const std::string text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "n,I_rel,D_rel,prediction,residual_scaled,tail_share");
    EXPECT_NE(text.find("\n1,nan,"), std::string::npos);

    cfg.family = Family::bernoulli();
    EXPECT_THROW(run_convergence_study(cfg), std::invalid_argument);
}

TEST(ConvergenceStudy, DeterministicOutput) {
    StudyConfig cfg;
    cfg.n_list = {16, 32};
    std::ostringstream a, b;
    write_study_csv(a, run_convergence_study(cfg));
    write_study_csv(b, run_convergence_study(cfg));
    EXPECT_EQ(a.str(), b.str());
}

TEST(StudyJson, CarriesReportsAndConfig) {
    StudyConfig cfg;
    cfg.n_list = {32};
    const auto rows = run_convergence_study(cfg);
    const auto j = study_json(cfg, family_coefficients(cfg.family, cfg.s), rows);
    EXPECT_EQ(j["family"], "standardized_exponential");
    EXPECT_EQ(j["s"], 4);
    EXPECT_EQ(j["rho"], "log log n");
    ASSERT_EQ(j["rows"].size(), 1u);
    EXPECT_EQ(j["rows"][0]["fisher_report"]["functional"], "relative_fisher");
    EXPECT_TRUE(j["rows"][0].contains("entropy_report"));
    EXPECT_DOUBLE_EQ(j["rows"][0]["I_rel"].get<double>(), rows[0].I_rel);
    cfg.rho = 0.5;
    EXPECT_DOUBLE_EQ(study_json(cfg, family_coefficients(cfg.family, cfg.s), rows)["rho"].get<double>(), 0.5);
}

TEST(TailCutoff, Formula) {
    const double l = std::log(16.0);
    EXPECT_NEAR(tail_cutoff(16, 4), std::sqrt(2.0 * l + 4.0 * std::log(l) + std::log(l)), 1e-14);
    EXPECT_NEAR(tail_cutoff(16, 4, 0.5), std::sqrt(2.0 * l + 4.0 * std::log(l) + 0.5), 1e-14);
    // log log n is only used from n = 3 on
    EXPECT_NEAR(tail_cutoff(2, 5), std::sqrt(3.0 * std::log(2.0)), 1e-14);
    EXPECT_LT(tail_cutoff(64, 4), tail_cutoff(512, 4));
}

TEST(TailSplit, ConservesRelativeFisher) {
    const auto p = exponential_sum(64);
    const double total = relative_fisher(p).value;
    for (double T : {0.5, 1.0, 2.5, 4.0}) {
        const auto [j0, j1] = tail_split(p, T);
        EXPECT_GE(j0, 0.0);
        EXPECT_GE(j1, 0.0);
        EXPECT_NEAR(j0 + j1, total, 1e-10 * total) << T;
    }
    const auto [edge0, edge1] = tail_split(p, 1e3);
    EXPECT_EQ(edge1, 0.0);
    EXPECT_NEAR(edge0, total, 1e-10 * total);
    const auto [none0, none1] = tail_split(p, -1.0);
    EXPECT_EQ(none0, 0.0);
    EXPECT_NEAR(none1, total, 1e-10 * total);
}

TEST(TailSplit, ExponentialTailShareIsSmall) {
    const auto p = exponential_sum(256);
    const auto [j0, j1] = tail_split(p, tail_cutoff(256, 4));
    EXPECT_LT(j1 / (j0 + j1), 0.05);
}

TEST(Config, ParseAndValidate) {
    std::istringstream in(
        "# study settings\n"
        "family = uniform\n"
        "s = 6\n"
        "n = 8, 16,32\n"
        "grid_N = 32768\n"
        "xmax = 30   # narrower\n"
        "threshold = 1e-10\n"
        "rho = 0.5\n"
        "out = result.json\n"
        "format = json\n"
        "seed = 7\n");
    const auto cfg = parse_config(in);
    EXPECT_EQ(cfg.family.tag(), "standardized_uniform");
    EXPECT_EQ(cfg.s, 6);
    EXPECT_EQ(cfg.n_list, (std::vector<int>{8, 16, 32}));
    EXPECT_EQ(cfg.grid.N, 32768);
    EXPECT_DOUBLE_EQ(cfg.grid.xmax, 30.0);
    EXPECT_DOUBLE_EQ(cfg.threshold, 1e-10);
    EXPECT_DOUBLE_EQ(*cfg.rho, 0.5);
    EXPECT_EQ(cfg.out, "result.json");
    EXPECT_EQ(cfg.format, "json");
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_NO_THROW(cfg.validate());

    StudyConfig base;
    base.s = 8;
    std::istringstream partial("n = 4\n");
    const auto merged = parse_config(partial, base);
    EXPECT_EQ(merged.s, 8);
    EXPECT_EQ(merged.n_list, std::vector<int>{4});

    std::istringstream unknown("colour = red\n");
    EXPECT_THROW(parse_config(unknown), std::invalid_argument);
    std::istringstream malformed("family uniform\n");
    EXPECT_THROW(parse_config(malformed), std::invalid_argument);
    EXPECT_THROW(read_config_file("/nonexistent/config.txt"), std::invalid_argument);
}

TEST(Config, ValidationErrors) {
    const auto invalid = [](auto mutate) {
        StudyConfig cfg;
        mutate(cfg);
        EXPECT_THROW(cfg.validate(), std::invalid_argument);
    };
    invalid([](StudyConfig& c) { c.s = 1; });
    invalid([](StudyConfig& c) { c.n_list = {}; });
    invalid([](StudyConfig& c) { c.n_list = {16, 8}; });
    invalid([](StudyConfig& c) { c.n_list = {0, 8}; });
    invalid([](StudyConfig& c) { c.grid.N = 3 << 14; });
    invalid([](StudyConfig& c) { c.grid.N = 1 << 13; });
    invalid([](StudyConfig& c) { c.grid.xmax = 0.0; });
    invalid([](StudyConfig& c) { c.threshold = 1.0; });
    invalid([](StudyConfig& c) { c.format = "xml"; });
    EXPECT_NO_THROW(StudyConfig{}.validate());
}

TEST(Config, IntList) {
    EXPECT_EQ(parse_int_list("1,2,30"), (std::vector<int>{1, 2, 30}));
    EXPECT_EQ(parse_int_list(" 5 "), std::vector<int>{5});
    EXPECT_THROW(parse_int_list("1,x"), std::invalid_argument);
}

TEST(Coefficients, FamilyTables) {
    const auto expo = family_coefficients(Family::exponential(), 6);
    EXPECT_EQ(expo.provenance, "exact");
    EXPECT_EQ(expo.J, 2);
    EXPECT_EQ(expo.exact, (std::vector<Q>{2, 4}));
    EXPECT_EQ(expo.values, (std::vector<double>{2.0, 4.0}));

    std::ostringstream csv;
    write_coefficients_csv(csv, expo);
    EXPECT_EQ(csv.str(), "j,numerator,denominator,float\n1,2,1,2\n2,4,1,4\n");
    const auto j = to_json(expo);
    EXPECT_EQ(j["provenance"], "exact");
    EXPECT_EQ(j["coefficients"][1]["numerator"], "4");

    // Bernoulli(1/3): gamma_3 = 1 / sqrt 2 is irrational-scaled, c_1 = gamma_3^2 / 2 = 1/4
    const auto skew = family_coefficients(Family::two_point(Q(1, 3)), 4);
    EXPECT_EQ(skew.provenance, "float");
    ASSERT_EQ(skew.J, 1);
    EXPECT_NEAR(skew.values[0], 0.25, 1e-14);
    EXPECT_EQ(to_double(skew.exact[0]), skew.values[0]);
}

TEST(Coefficients, FromSample) {
    std::vector<double> sample;
    for (int i = 0; i < 1000; ++i) {
        sample.push_back(-1.0);
        sample.push_back(1.0);
    }
    // symmetric two-point law: gamma_3 = 0 and gamma_4 = -2, so c_1 = 0 and c_2 = 4 / 6
    const auto t = sample_coefficients(sample, 6);
    ASSERT_EQ(t.J, 2);
    EXPECT_NEAR(t.values[0], 0.0, 1e-12);
    EXPECT_NEAR(t.values[1], 2.0 / 3.0, 1e-9);
}

TEST(InequalitySuite, GreenOnGaussianAndExponential) {
    const auto report = run_inequality_suite({Family::gaussian(), Family::exponential()}, {8, 16, 32});
    EXPECT_EQ(report.violations(), 0);
    for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.family << " " << c.n;

    // Cramer-Rao reads 1 <= I var with I(Z_8) = 8 / 6 for exponential summands
    const InequalityCheck* cr = nullptr;
    for (const auto& c : report.checks) {
        if (c.name == "cramer_rao" && c.family == "standardized_exponential" && c.n == 8) cr = &c;
    }
    ASSERT_NE(cr, nullptr);
    EXPECT_DOUBLE_EQ(cr->lhs, 1.0);
    EXPECT_NEAR(cr->rhs, 4.0 / 3.0, 1e-6);

    // Fisher information decreases from n to 2n: I(Z_16) = 16/14 <= I(Z_8) = 8/6
    ASSERT_NE(find_check(report, "fisher_monotone_n_to_2n", 8), nullptr);
    EXPECT_EQ(std::count_if(report.checks.begin(), report.checks.end(),
                            [](const auto& c) { return c.name == "stam_mixtures"; }) > 0,
              true);

    const auto j = to_json(report);
    EXPECT_EQ(j["violations"], 0);
    EXPECT_EQ(j["checks"].size(), report.checks.size());
}

TEST(InequalitySuite, SkipsFamiliesWithoutDensity) {
    const auto report = run_inequality_suite({Family::bernoulli()}, {8});
    ASSERT_FALSE(report.skipped.empty());
    EXPECT_NE(report.skipped.front().find("no density"), std::string::npos);
    EXPECT_EQ(report.violations(), 0);
}

TEST(InequalitySuite, CountsViolations) {
    InequalityReport r;
    r.checks.push_back({"a", "f", 1, 1.0, 2.0, 0.0, true});
    r.checks.push_back({"b", "f", 1, 3.0, 2.0, 0.5, false});
    EXPECT_EQ(r.violations(), 1);
    EXPECT_DOUBLE_EQ(r.checks[1].margin(), -0.5);
}

TEST(Theorem13, Uniform) {
    const auto r = run_theorem13_diagnostics(Family::uniform());
    EXPECT_GE(r.decay_exponent, 0.9);
    EXPECT_LE(r.decay_exponent, 1.1);
    EXPECT_TRUE(r.decay_ok);
    bool nu3_finite = false;
    for (const auto& [nu, w] : r.weighted) {
        if (nu == 3.0) nu3_finite = w.finite;
        if (nu == 1.0) EXPECT_FALSE(w.finite);
    }
    EXPECT_TRUE(nu3_finite);
    EXPECT_TRUE(r.integrability_ok);
    EXPECT_TRUE(r.density_ok);
    ASSERT_TRUE(r.n0_estimate.has_value());
    EXPECT_LE(*r.n0_estimate, 3);
    // ||p_1||_TV of the standardized uniform is 2 / (2 sqrt 3)
    ASSERT_TRUE(r.tv.front().second.has_value());
    EXPECT_NEAR(*r.tv.front().second, 1.0 / std::sqrt(3.0), 1e-3);
}

TEST(Theorem13, BernoulliHasNoDecay) {
    const auto r = run_theorem13_diagnostics(Family::bernoulli());
    EXPECT_NEAR(r.decay_exponent, 0.0, 0.05);
    EXPECT_FALSE(r.decay_ok);
    EXPECT_FALSE(r.integrability_ok);
    EXPECT_FALSE(r.density_ok);
    EXPECT_FALSE(r.n0_estimate.has_value());
    for (const auto& [nu, w] : r.weighted) EXPECT_FALSE(w.finite) << nu;
    for (const auto& [n, tv] : r.tv) EXPECT_FALSE(tv.has_value()) << n;
    const auto j = to_json(r);
    EXPECT_TRUE(j["n0_estimate"].is_null());
}

TEST(Theorem13, GaussianDecaysFasterThanAnyPower) {
    const auto r = run_theorem13_diagnostics(Family::gaussian());
    EXPECT_TRUE(std::isinf(r.decay_exponent));
    EXPECT_TRUE(r.decay_ok && r.integrability_ok && r.density_ok);
    EXPECT_EQ(r.n0_estimate, 1);
    EXPECT_EQ(to_json(r)["decay_exponent"], "inf");
    for (const auto& [n, tv] : r.tv) {
        ASSERT_TRUE(tv.has_value());
        EXPECT_NEAR(*tv, 2.0 / std::sqrt(2.0 * std::numbers::pi), 1e-6) << n;
    }
}
