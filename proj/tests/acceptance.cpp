// Acceptance run: one PASS/FAIL line per criterion with runtime and the
// measured quantities. Exit status is nonzero when any criterion fails.

#include "fisherclt/coefficients.hpp"
#include "fisherclt/decompose_bounds.hpp"
#include "fisherclt/functionals.hpp"
#include "fisherclt/harness.hpp"

#include "gh_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fisherclt;
using Q = Rational;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Q random_rational(std::mt19937_64& rng, int bound = 2) {
    std::uniform_int_distribution<int> den(1, 12);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-bound * d, bound * d);
    return Q(num(rng), d);
}

Q factorial_q(int n) {
    Q f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::string fmt(const char* format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::vector<double> gammas(const CumulantVector<Q>& c) {
    std::vector<double> g{0.0};
    for (int r = 1; r <= c.order(); ++r) g.push_back(to_double(c(r)));
    return g;
}

// 1. c_1 = gamma_3^2 / 2 exactly on 100 random vectors.
Outcome exact_first_coefficient() {
    std::mt19937_64 rng(1);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = CumulantVector<Q>::from_higher({random_rational(rng), random_rational(rng), random_rational(rng)});
        if (compute_cj(c, 1) != c(3) * c(3) / 2) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in 100"};
}

// 2. symmetric c_2 = gamma_4^2 / 6 exactly; skewed c_2 against Gauss-Hermite quadrature.
Outcome second_coefficient() {
    std::mt19937_64 rng(2);
    int mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = CumulantVector<Q>::from_higher({Q(0), random_rational(rng), random_rational(rng)});
        if (compute_cj(c, 2) != c(4) * c(4) / 6) ++mismatches;
    }
    const auto quad = oracle::gauss_hermite(200);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Q g3 = random_rational(rng);
        if (g3 == 0) g3 = Q(1, 2);
        const auto c = CumulantVector<Q>::from_higher({g3, random_rational(rng), random_rational(rng)});
        worst = std::max(worst, std::abs(to_double(compute_cj(c, 2)) - oracle::cj_by_quadrature(gammas(c), 2, quad)));
    }
    return {mismatches == 0 && worst < 1e-9,
            std::to_string(mismatches) + " symmetric mismatches, quadrature gap " + fmt("%.2e", worst)};
}

// 3. leading coefficient gamma_k^2 / (k-1)! when gamma_3..gamma_{k-1} vanish.
Outcome leading_coefficient_check() {
    std::mt19937_64 rng(3);
    int mismatches = 0;
    for (int k : {4, 6}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Q> higher(static_cast<std::size_t>(k - 3), Q(0));
            Q gk = random_rational(rng);
            if (gk == 0) gk = 1;
            higher.push_back(gk);
            while (static_cast<int>(higher.size()) < 2 * k - 5) higher.push_back(random_rational(rng));
            const auto c = CumulantVector<Q>::from_higher(higher);
            for (int j = 1; j < k - 2; ++j) mismatches += compute_cj(c, j) != 0;
            mismatches += compute_cj(c, k - 2) != gk * gk / factorial_q(k - 1);
        }
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches for k = 4, 6"};
}

// 4. odd-order expansion terms vanish.
Outcome odd_terms_vanish() {
    std::mt19937_64 rng(4);
    int nonzero = 0;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Q> higher;
        for (int r = 3; r <= 8; ++r) higher.push_back(random_rational(rng));
        const auto c = CumulantVector<Q>::from_higher(higher);
        for (int j : {3, 5, 7}) nonzero += expansion_term(c, j) != 0;
    }
    return {nonzero == 0, std::to_string(nonzero) + " nonzero of 30"};
}

// 5. exponential summands: n I(Z_n || Z) in [1.8, 2.2], gap to 2 decreasing.
Outcome exponential_rate() {
    StudyConfig cfg;
    cfg.family = Family::exponential();
    cfg.n_list = {64, 128, 256, 512};
    const auto rows = run_convergence_study(cfg);
    bool ok = true;
    double previous = INFINITY;
    std::string values;
    for (const auto& r : rows) {
        const double scaled = r.n * r.I_rel;
        const double gap = std::abs(scaled - 2.0);
        ok = ok && !r.skipped() && scaled >= 1.8 && scaled <= 2.2 && gap < previous;
        previous = gap;
        values += fmt(" %.5f", scaled);
    }
    return {ok, "n I =" + values};
}

// 6. uniform summands: n^2 I within 15% of 6/25 at n = 64, closer at 128.
Outcome uniform_rate() {
    StudyConfig cfg;
    cfg.family = Family::uniform();
    cfg.s = 6;
    cfg.n_list = {64, 128};
    const auto rows = run_convergence_study(cfg);
    const double c2 = 6.0 / 25.0;
    const double a = 64.0 * 64.0 * rows[0].I_rel;
    const double b = 128.0 * 128.0 * rows[1].I_rel;
    const bool ok = std::abs(a - c2) < 0.15 * c2 && std::abs(b - c2) < std::abs(a - c2);
    return {ok, "n^2 I =" + fmt(" %.5f", a) + fmt(" %.5f", b) + " vs 0.24"};
}

GridDensity three_uniform_convolution(double dx) {
    const auto u = uniform_density(0.0, 1.0, dx, 0.25);
    return convolve(convolve(u, u), u);
}

// 7. direct, quantile and second-derivative routes agree within 1%.
Outcome three_routes() {
    bool ok = true;
    std::string detail;
    const auto z8 = density_from_cf(normalized_sum_cf(cf_from_family(Family::exponential()), 8));
    for (const auto& [name, p] : {std::pair{std::string("Z_8"), z8}, std::pair{std::string("U*U*U"), three_uniform_convolution(1e-3)}}) {
        const double direct = fisher_information(p).value;
        const double quantile = fisher_via_quantile(p);
        const double second = fisher_via_second_derivative(p);
        const double spread = std::max(std::abs(quantile - direct), std::abs(second - direct)) / direct;
        ok = ok && spread < 0.01;
        detail += name + fmt(" %.6f", direct) + fmt("/%.6f", quantile) + fmt("/%.6f", second) + "; ";
    }
    return {ok, detail};
}

// 8. closed-form spot values.
Outcome spot_values() {
    const double dx = 1e-5;
    const auto in = [](double x) { return x > 0.0 && x < 1.0; };
    const auto beta = sample_function([&](double x) { return in(x) ? 30.0 * x * x * (1 - x) * (1 - x) : 0.0; }, -0.25, dx,
                                      static_cast<Eigen::Index>(std::llround(1.5 / dx)),
                                      [&](double x) { return in(x) ? 60.0 * x * (1 - x) * (1 - 2 * x) : 0.0; });
    const double ib = fisher_information(beta).value;
    const double ig = fisher_information(gaussian_density(0.0, 2.0)).value;
    const double tv = total_variation_norm(uniform_density(0.0, 1.0, 1.0 / 1024.0, 0.125));
    const double bound = three_uniform_fisher_bound(1, 1, 1);
    const double iu = fisher_information(three_uniform_convolution(1e-3)).value;
    const bool ok = std::abs(ib - 40.0) <= 0.01 && std::abs(ig - 0.25) <= 1e-6 && tv == 2.0 && bound == 6.0 && iu <= 6.0;
    return {ok, "I(beta)" + fmt(" %.6f", ib) + " I(N(0,4))" + fmt(" %.9f", ig) + " TV" + fmt(" %.17g", tv) + " bound" +
                    fmt(" %g", bound) + " I(U*U*U)" + fmt(" %.5f", iu)};
}

// 9. inequality suite over the built-in families.
Outcome inequality_suite() {
    const auto report = run_inequality_suite(default_suite_families(), {8, 16, 32, 64, 128, 256, 512});
    return {report.violations() == 0,
            std::to_string(report.violations()) + " violations in " + std::to_string(report.checks.size()) + " checks"};
}

// 10. exact step-density decomposition.
Outcome decomposition() {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> cells(1, 12), width(1, 5), den(1, 6), val(0, 9), zero(0, 4);
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = cells(rng);
        std::vector<Q> breaks{Q(width(rng) - 3, den(rng))};
        std::vector<Q> values;
        for (int k = 0; k < n; ++k) {
            breaks.push_back(breaks.back() + Q(width(rng), den(rng)));
            values.push_back(zero(rng) == 0 ? Q(0) : Q(val(rng) + 1, den(rng)));
        }
        values[0] += 1;
        const auto p = StepDensity::normalized(breaks, values);
        const auto m = decompose_step_density(p);
        bool ok = m.total_variation() == p.total_variation();
        for (int k = 0; k < p.cells(); ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const Q mid = (p.breaks[ks] + p.breaks[ks + 1]) / 2;
            Q density = 0;
            for (const auto& c : m.components) {
                if (c.a <= mid && mid < c.b) density += c.weight / (c.b - c.a);
            }
            ok = ok && density == p.values[ks];
        }
        failures += !ok;
    }
    const auto worked = decompose_step_density(StepDensity::make({0, 1, Q(3, 2)}, {Q(2, 5), Q(6, 5)}));
    const bool example = worked.components == std::vector<UniformComponent>{{0, Q(3, 2), Q(3, 5)}, {1, Q(3, 2), Q(2, 5)}};
    return {failures == 0 && example,
            std::to_string(failures) + " failures in 200, worked example " + (example ? "exact" : "differs")};
}

// 11. triangle I grows >= 1.5x per halving; three uniforms change < 0.5%.
Outcome divergence_detection() {
    const auto fisher = [](const GridDensity& p) { return fisher_information(p).value; };
    const double dx = 1e-3;
    const auto u = [](double h) { return uniform_density(0.0, 1.0, h, 0.25); };
    const auto tri = refinement_study([&](int level) { return convolve(u(dx / (1 << level)), u(dx / (1 << level))); },
                                      fisher, 4);
    const auto three = refinement_study([&](int level) { return three_uniform_convolution(dx / (1 << level)); }, fisher, 4);
    bool tri_ok = true;
    std::string detail = "triangle ratios";
    for (double r : tri.ratios) {
        tri_ok = tri_ok && r >= 1.5;
        detail += fmt(" %.4f", r);
    }
    bool three_ok = true;
    detail += " (" + to_string(tri.verdict) + "), three-uniform ratios";
    for (double r : three.ratios) {
        three_ok = three_ok && std::abs(r - 1.0) < 0.005;
        detail += fmt(" %.5f", r);
    }
    detail += " (" + to_string(three.verdict) + ")";
    return {tri_ok && three_ok, detail};
}

// 12. cf decay diagnostics for uniform and Bernoulli summands.
Outcome decay_diagnostics() {
    const auto u = run_theorem13_diagnostics(Family::uniform());
    bool nu3 = false;
    for (const auto& [nu, w] : u.weighted) {
        if (nu == 3.0) nu3 = w.finite;
    }
    const auto b = run_theorem13_diagnostics(Family::bernoulli());
    const bool ok = u.decay_exponent >= 0.9 && u.decay_exponent <= 1.1 && nu3 && !b.decay_ok && !b.integrability_ok &&
                    !b.density_ok;
    return {ok, "uniform eps" + fmt(" %.4f", u.decay_exponent) + (nu3 ? " nu=3 finite" : " nu=3 divergent") +
                    ", bernoulli eps" + fmt(" %.4f", b.decay_exponent) +
                    (b.decay_ok || b.integrability_ok || b.density_ok ? " some criterion ok" : " no criterion ok")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact first coefficient", exact_first_coefficient},
        {"second coefficient", second_coefficient},
        {"leading coefficient", leading_coefficient_check},
        {"odd terms vanish", odd_terms_vanish},
        {"exponential rate", exponential_rate},
        {"uniform rate", uniform_rate},
        {"three Fisher routes", three_routes},
        {"closed-form spot values", spot_values},
        {"inequality suite", inequality_suite},
        {"decomposition exactness", decomposition},
        {"divergence detection", divergence_detection},
        {"decay diagnostics", decay_diagnostics},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !out.pass;
        std::printf("%s %2zu %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
