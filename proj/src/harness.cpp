#include "fisherclt/harness.hpp"

#include "fisherclt/cumulants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace fisherclt {

namespace {

// Runs task(0..count-1) on at most hardware_concurrency workers; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F task) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < count; i = next++) out[i] = task(i);
        }));
    }
    for (auto& f : pool) f.get();
    return out;
}

}  // namespace

// ---- configuration ----------------------------------------------------------

void StudyConfig::validate() const {
    if (s < 2) throw std::invalid_argument("config: s must be at least 2");
    if (n_list.empty()) throw std::invalid_argument("config: n list is empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw std::invalid_argument("config: every n must be positive");
        if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("config: n list must increase strictly");
    }
    if (grid.N < (1 << 14) || (grid.N & (grid.N - 1)) != 0) {
        throw std::invalid_argument("config: grid_N must be a power of two, at least 16384");
    }
    if (!(grid.xmax > 0.0)) throw std::invalid_argument("config: xmax must be positive");
    if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("config: threshold must lie in (0, 1)");
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof()) {
        throw std::invalid_argument("config: bad value '" + text + "' for " + key);
    }
    return value;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number<int>("n", item));
    }
    if (out.empty()) throw std::invalid_argument("empty integer list '" + text + "'");
    return out;
}

StudyConfig parse_config(std::istream& in, StudyConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "family") {
            base.family = Family::parse(value);
        } else if (key == "s") {
            base.s = parse_number<int>(key, value);
        } else if (key == "n") {
            base.n_list = parse_int_list(value);
        } else if (key == "grid_N") {
            base.grid.N = parse_number<int>(key, value);
        } else if (key == "xmax") {
            base.grid.xmax = parse_number<double>(key, value);
        } else if (key == "threshold") {
            base.threshold = parse_number<double>(key, value);
        } else if (key == "rho") {
            base.rho = parse_number<double>(key, value);
        } else if (key == "out") {
            base.out = value;
        } else if (key == "format") {
            base.format = value;
        } else if (key == "seed") {
            base.seed = parse_number<std::uint64_t>(key, value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return base;
}

StudyConfig read_config_file(const std::string& path, StudyConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

// ---- coefficients -----------------------------------------------------------

CoefficientTable family_coefficients(const Family& family, int s) {
    if (s < 2) throw std::invalid_argument("coefficients: s must be at least 2");
    CoefficientTable t;
    try {
        const auto coeffs = compute_expansion_coefficients(analytic_cumulants<Rational>(family, s), s);
        t.J = coeffs.J;
        t.provenance = "exact";
        t.exact = coeffs.c;
        for (const auto& c : coeffs.c) t.values.push_back(to_double(c));
    } catch (const std::invalid_argument&) {
        // irrational cumulants
        const auto coeffs = compute_expansion_coefficients(analytic_cumulants<double>(family, s), s);
        t.J = coeffs.J;
        t.provenance = "float";
        t.values = coeffs.c;
        for (double c : coeffs.c) t.exact.push_back(exact_rational(c));
    }
    return t;
}

CoefficientTable sample_coefficients(std::span<const double> sample, int s) {
    const auto coeffs = compute_expansion_coefficients(empirical_cumulants(sample, s), s);
    CoefficientTable t;
    t.J = coeffs.J;
    t.provenance = "float";
    t.values = coeffs.c;
    for (double c : coeffs.c) t.exact.push_back(exact_rational(c));
    return t;
}

nlohmann::json to_json(const CoefficientTable& t) {
    auto rows = nlohmann::json::array();
    for (int j = 1; j <= t.J; ++j) {
        const auto k = static_cast<std::size_t>(j - 1);
        rows.push_back({{"j", j},
                        {"numerator", numerator_string(t.exact[k])},
                        {"denominator", denominator_string(t.exact[k])},
                        {"float", t.values[k]}});
    }
    return {{"J", t.J}, {"provenance", t.provenance}, {"coefficients", rows}};
}

void write_coefficients_csv(std::ostream& out, const CoefficientTable& t) {
    out << "j,numerator,denominator,float\n";
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    for (int j = 1; j <= t.J; ++j) {
        const auto k = static_cast<std::size_t>(j - 1);
        out << j << ',' << numerator_string(t.exact[k]) << ',' << denominator_string(t.exact[k]) << ',' << t.values[k]
            << '\n';
    }
    out.precision(old);
}

// ---- convergence study ------------------------------------------------------

double tail_cutoff(int n, int s, std::optional<double> rho) {
    if (n < 1) throw std::invalid_argument("tail_cutoff: n must be positive");
    const double logn = std::log(static_cast<double>(n));
    // log log n is negative or undefined for n < 3
    const double loglog = n >= 3 ? std::log(logn) : 0.0;
    const double r = rho.value_or(loglog);
    return std::sqrt(std::max(0.0, (s - 2) * logn + s * loglog + r));
}

std::pair<double, double> tail_split(const GridDensity& p, double T, double rel_threshold) {
    const double thr = positivity_threshold(p, rel_threshold);
    const double a = p.mean();
    const double var = p.variance();
    const Eigen::ArrayXd d = first_derivative(p);
    double inner = 0.0;
    double outer = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p.values[i] <= thr) continue;
        const double u = d[i] + (p.x(i) - a) / var * p.values[i];
        const double v = u * u / p.values[i];
        if (std::abs(p.x(i)) <= T) {
            inner += v;
        } else {
            outer += v;
        }
    }
    return {inner * p.dx, outer * p.dx};
}

namespace {

ConvergenceRow convergence_row(const StudyConfig& cfg, const CoefficientTable& coeffs, int n) {
    ConvergenceRow row;
    row.n = n;
    row.T_n = tail_cutoff(n, cfg.s, cfg.rho);
    GridDensity p;
    try {
        p = density_from_cf(normalized_sum_cf(cf_from_family(cfg.family, 10.0, 0.1), n), cfg.grid);
    } catch (const NumericalError& e) {
        row.status = std::string("skipped: insufficient smoothing (") + e.what() + ")";
        return row;
    }
    row.fisher_report = relative_fisher(p, cfg.threshold);
    row.entropy_report = entropic_distance(p, cfg.threshold);
    row.I_rel = row.fisher_report.value;
    row.D_rel = row.entropy_report.value;
    row.variance = p.variance();
    for (int j = 1; j <= coeffs.J; ++j) {
        row.prediction += coeffs.values[static_cast<std::size_t>(j - 1)] * std::pow(static_cast<double>(n), -j);
    }
    row.residual_scaled = (row.I_rel - row.prediction) * std::pow(static_cast<double>(n), coeffs.J);
    const auto [j0, j1] = tail_split(p, row.T_n, cfg.threshold);
    row.tail_share = j0 + j1 > 0.0 ? j1 / (j0 + j1) : 0.0;
    return row;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence_study(const StudyConfig& cfg) {
    cfg.validate();
    if (!cfg.family.has_density()) throw std::invalid_argument("study: family has no density");
    const CoefficientTable coeffs = family_coefficients(cfg.family, cfg.s);
    return parallel_map<ConvergenceRow>(cfg.n_list.size(),
                                        [&](std::size_t i) { return convergence_row(cfg, coeffs, cfg.n_list[i]); });
}

namespace {

std::string fmt12(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_study_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "n,I_rel,D_rel,prediction,residual_scaled,tail_share\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        const bool ok = !r.skipped();
        out << r.n << ',' << fmt12(ok ? r.I_rel : nan) << ',' << fmt12(ok ? r.D_rel : nan) << ','
            << fmt12(ok ? r.prediction : nan) << ',' << fmt12(ok ? r.residual_scaled : nan) << ','
            << fmt12(ok ? r.tail_share : nan) << '\n';
    }
}

nlohmann::json study_json(const StudyConfig& cfg, const CoefficientTable& coeffs,
                          const std::vector<ConvergenceRow>& rows) {
    auto list = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"n", r.n}, {"status", r.status}};
        if (!r.skipped()) {
            j["I_rel"] = r.I_rel;
            j["D_rel"] = r.D_rel;
            j["prediction"] = r.prediction;
            j["residual_scaled"] = r.residual_scaled;
            j["tail_share"] = r.tail_share;
            j["T_n"] = r.T_n;
            j["variance"] = r.variance;
            j["fisher_report"] = to_json(r.fisher_report);
            j["entropy_report"] = to_json(r.entropy_report);
        }
        list.push_back(std::move(j));
    }
    nlohmann::json out{{"family", cfg.family.tag()},
                       {"s", cfg.s},
                       {"grid", {{"N", cfg.grid.N}, {"xmax", cfg.grid.xmax}}},
                       {"threshold", cfg.threshold},
                       {"coefficients", to_json(coeffs)},
                       {"rows", list}};
    out["rho"] = cfg.rho ? nlohmann::json(*cfg.rho) : nlohmann::json("log log n");
    return out;
}

// ---- inequality suite -------------------------------------------------------

int InequalityReport::violations() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

std::vector<Family> default_suite_families() {
    return {Family::gaussian(),
            Family::exponential(),
            Family::uniform(),
            Family::beta33(),
            Family::gaussian_mixture({Rational(1, 2), Rational(1, 2)}, {Rational(-1), Rational(1)},
                                     {Rational(1, 2), Rational(1, 2)}),
            Family::bernoulli()};
}

namespace {

struct CheckList {
    std::string family;
    int n = 0;
    std::vector<InequalityCheck> checks;

    void add(const std::string& name, double lhs, double rhs, double slack) {
        const bool pass = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + slack;
        checks.push_back({name, family, n, lhs, rhs, slack, pass});
    }
};

// max_x (a(x) - b(x))
double max_excess(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) { return (a - b).maxCoeff(); }

struct NPoint {
    std::vector<InequalityCheck> checks;
    std::optional<double> fisher;  // I(Z_n)
    std::string skipped;
};

NPoint family_checks(const Family& family, int n, const SuiteOptions& opts) {
    NPoint out;
    CheckList list{family.tag(), n, {}};
    GridDensity p;
    try {
        p = density_from_cf(normalized_sum_cf(cf_from_family(family, 10.0, 0.1), n), opts.grid);
    } catch (const NumericalError& e) {
        out.skipped = family.tag() + " n=" + std::to_string(n) + ": " + e.what();
        return out;
    }
    const double thr = opts.threshold;
    const double I = fisher_information(p, thr).value;
    const double I_rel = relative_fisher(p, thr).value;
    const double D = entropic_distance(p, thr).value;
    const double var = p.variance();
    out.fisher = I;

    list.add("cramer_rao", 1.0, I * var, 1e-8);
    list.add("entropy_le_half_var_relative_fisher", D, 0.5 * var * I_rel, 1e-8);
    list.add("tv_to_gaussian_le_4_sqrt_relative_fisher", tv_distance_to_gaussian(p), 4.0 * std::sqrt(I_rel), 1e-6);
    list.add("tv_le_sqrt_fisher", total_variation_norm(p), std::sqrt(I), 1e-6);
    list.add("max_density_le_sqrt_fisher", p.max(), std::sqrt(I), 1e-8);

    // cf bounds on the exact f_n
    const double beta2 = p.absolute_moment(2.0);
    double cf_excess = -std::numeric_limits<double>::infinity();
    double cf_deriv_excess = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 20; ++k) {
        const double t = 0.5 * k;
        cf_excess = std::max(cf_excess, std::abs(family.normalized_sum_cf(t, n, 0)) - std::sqrt(I) / t);
        cf_deriv_excess =
            std::max(cf_deriv_excess, std::abs(family.normalized_sum_cf(t, n, 1)) - (1.0 + std::sqrt(beta2 * I)) / t);
    }
    list.add("cf_le_sqrt_fisher_over_t", cf_excess, 0.0, 1e-8);
    list.add("cf_derivative_le_C_over_t", cf_deriv_excess, 0.0, 1e-8);

    for (int s : {1, 2}) {
        list.add("weighted_derivative_norm_s" + std::to_string(s), weighted_derivative_norm(p, s),
                 std::sqrt(p.absolute_moment(2.0 * s) * I), 1e-6);
    }
    {
        const Eigen::ArrayXd x = p.grid();
        const double envelope = ((1.0 + x * x) * p.values).maxCoeff();
        const double C = 2.0 * p.absolute_moment(1.0) + std::sqrt((1.0 + p.absolute_moment(4.0)) * I);
        list.add("density_envelope_s2", envelope, C, 1e-8);
    }

    // two- and three-fold convolutions of p
    const GridDensity q = convolve(p, p);
    const double Iq = fisher_information(q, thr).value;
    list.add("stam_two_copies", 2.0 / I, 1.0 / Iq, 1e-6 / Iq);
    {
        const Eigen::ArrayXd dq = first_derivative(q);
        const Eigen::ArrayXd d2q = second_derivative(q);
        const Eigen::ArrayXd root = q.values.max(0.0).sqrt();
        list.add("pair_derivative_pointwise", max_excess(dq.abs(), std::pow(I, 0.75) * root), 0.0, 1e-8);
        list.add("pair_derivative_variation", d2q.abs().sum() * q.dx, I, 1e-6);
        list.add("pair_second_derivative_sup", d2q.abs().maxCoeff(), std::pow(I, 1.5), 1e-8);
        list.add("pair_second_order_fisher", second_order_fisher(q, thr), I * I, 1e-6);
    }
    {
        const GridDensity r = convolve(q, p);
        const Eigen::ArrayXd d2r = second_derivative(r);
        const Eigen::ArrayXd root = r.values.max(0.0).sqrt();
        list.add("triple_second_derivative_pointwise", max_excess(d2r.abs(), std::pow(I, 1.25) * root), 0.0, 1e-8);
    }
    out.checks = std::move(list.checks);
    return out;
}

GridDensity random_gaussian_mixture(std::mt19937_64& rng, const GridSpec& grid, double& bound) {
    std::uniform_int_distribution<int> count(2, 3);
    std::uniform_real_distribution<double> weight(0.1, 1.0), mean(-3.0, 3.0), sd(0.3, 2.0);
    const int k = count(rng);
    std::vector<GridDensity> parts;
    std::vector<double> w;
    double total = 0.0;
    std::vector<double> sds;
    for (int i = 0; i < k; ++i) {
        w.push_back(weight(rng));
        total += w.back();
        const double mu = mean(rng);
        sds.push_back(sd(rng));
        parts.push_back(gaussian_density(mu, sds.back(), grid));
    }
    bound = 0.0;
    for (int i = 0; i < k; ++i) {
        w[static_cast<std::size_t>(i)] /= total;
        bound += w[static_cast<std::size_t>(i)] / (sds[static_cast<std::size_t>(i)] * sds[static_cast<std::size_t>(i)]);
    }
    return mixture(parts, w);
}

std::vector<InequalityCheck> mixture_checks(const SuiteOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    CheckList list{"gaussian_mixture(random)", 0, {}};
    for (int m = 0; m < opts.random_mixtures; ++m) {
        double bound_p = 0.0;
        double bound_q = 0.0;
        const GridDensity p = random_gaussian_mixture(rng, opts.grid, bound_p);
        const GridDensity q = random_gaussian_mixture(rng, opts.grid, bound_q);
        const double Ip = fisher_information(p, opts.threshold).value;
        const double Iq = fisher_information(q, opts.threshold).value;
        list.add("mixture_fisher_le_average", Ip, bound_p, 1e-6 * bound_p);
        for (int a = 1; a <= 9; ++a) {
            const double alpha = 0.1 * a;
            const double Imix = fisher_information(mixture({p, q}, {alpha, 1.0 - alpha}), opts.threshold).value;
            list.add("fisher_convexity", Imix, alpha * Ip + (1.0 - alpha) * Iq, 1e-8);
        }
        const double Ipq = fisher_information(convolve(p, q), opts.threshold).value;
        list.add("stam_mixtures", 1.0 / Ip + 1.0 / Iq, 1.0 / Ipq, 1e-6 / Ipq);
    }
    return std::move(list.checks);
}

}  // namespace

InequalityReport run_inequality_suite(const std::vector<Family>& families, const std::vector<int>& n_list,
                                      const SuiteOptions& opts) {
    InequalityReport report;
    const std::size_t per_family = n_list.size();
    auto points = parallel_map<NPoint>(families.size() * per_family, [&](std::size_t i) {
        const Family& family = families[i / per_family];
        return family.has_density() ? family_checks(family, n_list[i % per_family], opts) : NPoint{};
    });

    for (std::size_t f = 0; f < families.size(); ++f) {
        if (!families[f].has_density()) {
            report.skipped.push_back(families[f].tag() + ": no density");
            continue;
        }
        std::vector<std::optional<double>> fisher;
        for (std::size_t k = 0; k < per_family; ++k) {
            const NPoint& point = points[f * per_family + k];
            if (!point.skipped.empty()) report.skipped.push_back(point.skipped);
            report.checks.insert(report.checks.end(), point.checks.begin(), point.checks.end());
            fisher.push_back(point.fisher);
        }
        // monotonicity of I(Z_n) along n -> 2n
        CheckList list{families[f].tag(), 0, {}};
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            for (std::size_t k = 0; k < n_list.size(); ++k) {
                if (n_list[k] != 2 * n_list[i] || !fisher[i] || !fisher[k]) continue;
                list.n = n_list[i];
                list.add("fisher_monotone_n_to_2n", *fisher[k], *fisher[i], 1e-8);
            }
        }
        report.checks.insert(report.checks.end(), list.checks.begin(), list.checks.end());
    }
    const auto mix = mixture_checks(opts);
    report.checks.insert(report.checks.end(), mix.begin(), mix.end());
    return report;
}

nlohmann::json to_json(const InequalityReport& r) {
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"family", c.family},
                          {"n", c.n},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"slack", c.slack},
                          {"margin", c.margin()},
                          {"pass", c.pass}});
    }
    return {{"violations", r.violations()}, {"checks", checks}, {"skipped", r.skipped}};
}

// ---- cf decay diagnostics ---------------------------------------------------

namespace {

std::optional<GridDensity> sum_density(const Family& family, int n) {
    if (!family.has_density()) return std::nullopt;
    if (n == 1) return sample_family(family);
    try {
        return density_from_cf(normalized_sum_cf(cf_from_family(family, 10.0, 0.1), n));
    } catch (const NumericalError&) {
        // cf too heavy-tailed for inversion; convolve sampled summands instead
    }
    const GridDensity base = sample_family(family, GridSpec{1 << 14, 20.0});
    GridDensity acc = base;
    for (int i = 1; i < n; ++i) acc = convolve(acc, base);
    return affine_image(acc, 1.0 / std::sqrt(static_cast<double>(n)), 0.0);
}

}  // namespace

Theorem13Report run_theorem13_diagnostics(const Family& family, double tmax, double dt) {
    Theorem13Report r;
    r.family = family.tag();
    const CharFunctionGrid f = cf_from_family(family, tmax, dt);
    r.window = {std::min(20.0, tmax / 100.0), tmax / 2.0};
    r.decay_exponent = decay_exponent(f, r.window);
    for (double nu : {1.0, 2.0, 3.0, 4.0, 6.0, 8.0}) r.weighted.emplace_back(nu, weighted_cf_integral(f, nu, r.window));

    const std::vector<int> ns{1, 2, 3, 4, 8};
    const auto tvs = parallel_map<std::optional<double>>(ns.size(), [&](std::size_t i) -> std::optional<double> {
        const auto p = sum_density(family, ns[i]);
        if (!p) return std::nullopt;
        return total_variation_norm(*p);
    });
    for (std::size_t i = 0; i < ns.size(); ++i) r.tv.emplace_back(ns[i], tvs[i]);

    r.decay_ok = r.decay_exponent > 0.05;
    r.integrability_ok = std::any_of(r.weighted.begin(), r.weighted.end(), [](const auto& w) { return w.second.finite; });
    r.density_ok = std::any_of(r.tv.begin(), r.tv.end(), [](const auto& t) { return t.second && std::isfinite(*t.second); });
    if (r.decay_ok) {
        const double inv = 1.0 / r.decay_exponent;
        r.n0_estimate = std::max(1, static_cast<int>(std::ceil(inv - 1e-9)));
    }
    return r;
}

nlohmann::json to_json(const Theorem13Report& r) {
    auto weighted = nlohmann::json::array();
    for (const auto& [nu, w] : r.weighted) {
        nlohmann::json j{{"nu", nu}, {"finite", w.finite}, {"grid_part", w.grid_part}, {"exponent", w.exponent}};
        j["value"] = std::isfinite(w.value) ? nlohmann::json(w.value) : nlohmann::json(nullptr);
        weighted.push_back(std::move(j));
    }
    auto tv = nlohmann::json::array();
    for (const auto& [n, v] : r.tv) tv.push_back({{"n", n}, {"tv", v ? nlohmann::json(*v) : nlohmann::json(nullptr)}});
    nlohmann::json out{{"family", r.family},
                       {"window", {r.window.first, r.window.second}},
                       {"weighted_integrals", weighted},
                       {"tv", tv},
                       {"decay_ok", r.decay_ok},
                       {"integrability_ok", r.integrability_ok},
                       {"density_ok", r.density_ok}};
    out["decay_exponent"] = std::isfinite(r.decay_exponent) ? nlohmann::json(r.decay_exponent) : nlohmann::json("inf");
    out["n0_estimate"] = r.n0_estimate ? nlohmann::json(*r.n0_estimate) : nlohmann::json(nullptr);
    return out;
}

}  // namespace fisherclt
