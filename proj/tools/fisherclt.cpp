#include "fisherclt/cumulants.hpp"
#include "fisherclt/decompose_bounds.hpp"
#include "fisherclt/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

using namespace fisherclt;

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;
constexpr int kViolation = 3;

struct Flags {
    std::string config;
    std::string family;
    int s = 0;
    std::string n;
    int grid_N = 0;
    double xmax = 0.0;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    double rho = 0.0;
};

// Config file first, then every flag that was given explicitly.
StudyConfig resolve(const Flags& f, const CLI::App& app, StudyConfig cfg) {
    if (!f.config.empty()) cfg = read_config_file(f.config, cfg);
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--family")) cfg.family = Family::parse(f.family);
    if (given("--s")) cfg.s = f.s;
    if (given("--n")) cfg.n_list = parse_int_list(f.n);
    if (given("--grid-N")) cfg.grid.N = f.grid_N;
    if (given("--xmax")) cfg.grid.xmax = f.xmax;
    if (given("--out")) cfg.out = f.out;
    if (given("--format")) cfg.format = f.format;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--threshold")) cfg.threshold = f.threshold;
    if (given("--rho")) cfg.rho = f.rho;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App& app, Flags& f) {
    app.add_option("--config", f.config, "key = value file; explicit flags take precedence");
    app.add_option("--family", f.family, "family tag, e.g. exponential, uniform, gaussian_mixture:w=..;mu=..;sigma=..");
    app.add_option("--s", f.s, "moment order s >= 2");
    app.add_option("--n", f.n, "comma-separated increasing list of n");
    app.add_option("--grid-N", f.grid_N, "grid points (power of two, >= 16384)");
    app.add_option("--xmax", f.xmax, "grid half-width");
    app.add_option("--out", f.out, "output file (default stdout)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", f.seed, "seed for randomized checks");
    app.add_option("--threshold", f.threshold, "positivity threshold relative to max p");
    app.add_option("--rho", f.rho, "rho_n in the tail cutoff (default log log n)");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher information in the central limit theorem: expansions, numerics and checks"};
    app.require_subcommand(1);

    Flags coeffs_flags, study_flags, ineq_flags, thm_flags, dec_flags;
    std::string sample_path;
    std::string step_path;

    auto* coeffs = app.add_subcommand("coeffs", "expansion coefficients c_1..c_J from cumulants");
    add_common(*coeffs, coeffs_flags);
    coeffs->add_option("--sample", sample_path, "file of observations; plug-in cumulants replace the family");

    auto* study = app.add_subcommand("study", "convergence of I(Z_n||Z) against the expansion");
    add_common(*study, study_flags);

    auto* ineq = app.add_subcommand("inequalities", "inequality suite over the built-in families");
    add_common(*ineq, ineq_flags);

    auto* thm = app.add_subcommand("thm13", "cf decay, integrability and density diagnostics");
    add_common(*thm, thm_flags);

    auto* dec = app.add_subcommand("decompose", "step density file to an exact uniform mixture (JSON)");
    add_common(*dec, dec_flags);
    dec->add_option("file", step_path, "lines 'left,right,value'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*coeffs) {
            StudyConfig base;
            if (!coeffs->count("--n")) base.n_list = {1};
            const StudyConfig cfg = resolve(coeffs_flags, *coeffs, base);
            CoefficientTable t;
            if (!sample_path.empty()) {
                const auto sample = read_sample_file(sample_path);
                t = sample_coefficients(sample, cfg.s);
            } else {
                t = family_coefficients(cfg.family, cfg.s);
            }
            Output out(cfg.out);
            if (cfg.format == "json") {
                auto j = to_json(t);
                j["family"] = sample_path.empty() ? cfg.family.tag() : "sample:" + sample_path;
                j["s"] = cfg.s;
                out.get() << j.dump(2) << '\n';
            } else {
                write_coefficients_csv(out.get(), t);
            }
            return 0;
        }
        if (*study) {
            const StudyConfig cfg = resolve(study_flags, *study, {});
            const auto rows = run_convergence_study(cfg);
            for (const auto& r : rows) {
                if (r.skipped()) std::cerr << "n=" << r.n << ": " << r.status << '\n';
            }
            Output out(cfg.out);
            if (cfg.format == "json") {
                out.get() << study_json(cfg, family_coefficients(cfg.family, cfg.s), rows).dump(2) << '\n';
            } else {
                write_study_csv(out.get(), rows);
            }
            const bool any = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.skipped(); });
            return any ? 0 : kNumerical;
        }
        if (*ineq) {
            StudyConfig base;
            base.n_list = {8, 16, 32, 64, 128, 256, 512};
            const StudyConfig cfg = resolve(ineq_flags, *ineq, base);
            std::vector<Family> families = default_suite_families();
            if (ineq->count("--family")) families = {cfg.family};
            SuiteOptions opts;
            opts.grid = cfg.grid;
            opts.threshold = cfg.threshold;
            opts.seed = cfg.seed;
            const auto report = run_inequality_suite(families, cfg.n_list, opts);
            Output out(cfg.out);
            if (cfg.format == "json") {
                out.get() << to_json(report).dump(2) << '\n';
            } else {
                out.get() << "name,family,n,lhs,rhs,slack,margin,pass\n";
                out.get().precision(12);
                for (const auto& c : report.checks) {
                    out.get() << c.name << ",\"" << c.family << "\"," << c.n << ',' << c.lhs << ',' << c.rhs << ','
                              << c.slack << ',' << c.margin() << ',' << (c.pass ? "pass" : "FAIL") << '\n';
                }
            }
            for (const auto& s : report.skipped) std::cerr << "skipped: " << s << '\n';
            if (report.violations() > 0) {
                std::cerr << report.violations() << " inequality violation(s)\n";
                return kViolation;
            }
            return 0;
        }
        if (*thm) {
            StudyConfig base;
            base.format = "json";
            const StudyConfig cfg = resolve(thm_flags, *thm, base);
            const auto report = run_theorem13_diagnostics(cfg.family);
            Output out(cfg.out);
            out.get() << to_json(report).dump(2) << '\n';
            return 0;
        }
        if (*dec) {
            const StudyConfig cfg = resolve(dec_flags, *dec, {});
            const StepDensity p = read_step_density_file(step_path);
            const UniformMixture m = decompose_step_density(p);
            if (!reconstructs(m, p) || m.total_variation() != p.total_variation()) {
                std::cerr << "decomposition does not reproduce the step density\n";
                return kNumerical;
            }
            nlohmann::json j{{"components", to_json(m)},
                             {"total_variation", p.total_variation().str()},
                             {"cells", p.cells()}};
            Output out(cfg.out);
            out.get() << j.dump(2) << '\n';
            return 0;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical precondition failed: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical precondition failed: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
