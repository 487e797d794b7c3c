#pragma once

// Experiment drivers behind the command-line tool: convergence studies of
// I(Z_n||Z) against the expansion sum c_j / n^j, the inequality suite and the
// cf-decay diagnostics.

#include "fisherclt/coefficients.hpp"
#include "fisherclt/density_engine.hpp"
#include "fisherclt/functionals.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fisherclt {

struct StudyConfig {
    Family family = Family::exponential();
    int s = 4;
    std::vector<int> n_list{64, 128, 256, 512};
    GridSpec grid;
    double threshold = kDefaultRelativeThreshold;  // relative to max p
    std::optional<double> rho;                     // rho_n in T_n; log log n when unset
    std::string out;                               // empty: stdout
    std::string format = "csv";
    std::uint64_t seed = 0;

    void validate() const;
};

/// Applies "key = value" lines ('#' comments) on top of `base`. Keys: family,
/// s, n (comma list), grid_N, xmax, threshold, rho, out, format, seed.
StudyConfig parse_config(std::istream& in, StudyConfig base = {});
StudyConfig read_config_file(const std::string& path, StudyConfig base = {});

std::vector<int> parse_int_list(const std::string& text);

/// Expansion coefficients c_1..c_J of a family, exact when the standardized
/// cumulants are rational and in floating point otherwise.
struct CoefficientTable {
    int J = 0;
    std::string provenance;           // "exact" or "float"
    std::vector<Rational> exact;      // exact values, or the dyadic value of each double
    std::vector<double> values;
};

CoefficientTable family_coefficients(const Family& family, int s);
CoefficientTable sample_coefficients(std::span<const double> sample, int s);

nlohmann::json to_json(const CoefficientTable& t);
void write_coefficients_csv(std::ostream& out, const CoefficientTable& t);

/// T_n = sqrt((s - 2) log n + s log log n + rho_n), rho_n = log log n by default.
double tail_cutoff(int n, int s, std::optional<double> rho = std::nullopt);

/// Relative-Fisher integral split at |x| = T: (J0 over |x| <= T, J1 outside).
std::pair<double, double> tail_split(const GridDensity& p, double T, double rel_threshold = kDefaultRelativeThreshold);

struct ConvergenceRow {
    int n = 0;
    std::string status = "ok";  // or "skipped: insufficient smoothing (...)"
    double I_rel = 0.0;
    double D_rel = 0.0;
    double prediction = 0.0;
    double residual_scaled = 0.0;  // (I_rel - prediction) n^J
    double tail_share = 0.0;       // J1 / (J0 + J1)
    double T_n = 0.0;
    double variance = 1.0;
    FunctionalReport fisher_report;
    FunctionalReport entropy_report;

    bool skipped() const { return status != "ok"; }
};

/// Rows in n order; rows for distinct n are computed concurrently.
std::vector<ConvergenceRow> run_convergence_study(const StudyConfig& cfg);

void write_study_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
nlohmann::json study_json(const StudyConfig& cfg, const CoefficientTable& coeffs, const std::vector<ConvergenceRow>& rows);

// ---- inequality suite -------------------------------------------------------

/// One evaluated inequality lhs <= rhs + slack.
struct InequalityCheck {
    std::string name;
    std::string family;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;

    double margin() const { return rhs + slack - lhs; }
};

struct InequalityReport {
    std::vector<InequalityCheck> checks;
    std::vector<std::string> skipped;
    int violations() const;
};

struct SuiteOptions {
    GridSpec grid;
    double threshold = kDefaultRelativeThreshold;
    std::uint64_t seed = 0;
    int random_mixtures = 4;
};

std::vector<Family> default_suite_families();

InequalityReport run_inequality_suite(const std::vector<Family>& families, const std::vector<int>& n_list,
                                      const SuiteOptions& opts = {});

nlohmann::json to_json(const InequalityReport& r);

// ---- cf decay diagnostics ---------------------------------------------------

struct Theorem13Report {
    std::string family;
    double decay_exponent = 0.0;
    std::pair<double, double> window;
    std::vector<std::pair<double, WeightedCfIntegral>> weighted;  // (nu, integral)
    std::vector<std::pair<int, std::optional<double>>> tv;        // (n, ||p_n||_TV when a density was built)
    bool decay_ok = false;
    bool integrability_ok = false;
    bool density_ok = false;
    std::optional<int> n0_estimate;
};

Theorem13Report run_theorem13_diagnostics(const Family& family, double tmax = 2000.0, double dt = 0.01);

nlohmann::json to_json(const Theorem13Report& r);

}  // namespace fisherclt
