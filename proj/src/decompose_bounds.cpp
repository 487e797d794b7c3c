#include "fisherclt/decompose_bounds.hpp"

#include "fisherclt/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace fisherclt {

// ---- StepDensity ------------------------------------------------------------

namespace {

void validate_shape(const std::vector<Rational>& breaks, const std::vector<Rational>& values) {
    if (values.empty() || breaks.size() != values.size() + 1) {
        throw std::invalid_argument("step density: need n >= 1 values and n + 1 breakpoints");
    }
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        if (!(breaks[k] < breaks[k + 1])) throw std::invalid_argument("step density: breakpoints must increase strictly");
    }
    for (const auto& v : values) {
        if (v < 0) throw std::invalid_argument("step density: values must be nonnegative");
    }
}

Rational mass_of(const std::vector<Rational>& breaks, const std::vector<Rational>& values) {
    Rational m = 0;
    for (std::size_t k = 0; k < values.size(); ++k) m += values[k] * (breaks[k + 1] - breaks[k]);
    return m;
}

}  // namespace

StepDensity StepDensity::make(std::vector<Rational> breaks, std::vector<Rational> values) {
    validate_shape(breaks, values);
    if (mass_of(breaks, values) != 1) throw std::invalid_argument("step density: total mass must be exactly 1");
    return {std::move(breaks), std::move(values)};
}

StepDensity StepDensity::normalized(std::vector<Rational> breaks, std::vector<Rational> values) {
    validate_shape(breaks, values);
    const Rational m = mass_of(breaks, values);
    if (m == 0) throw std::invalid_argument("step density: all values are zero");
    for (auto& v : values) v /= m;
    return {std::move(breaks), std::move(values)};
}

Rational StepDensity::mass() const { return mass_of(breaks, values); }

Rational StepDensity::total_variation() const {
    Rational tv = values.front() + values.back();
    for (std::size_t k = 0; k + 1 < values.size(); ++k) tv += abs(values[k + 1] - values[k]);
    return tv;
}

Rational StepDensity::operator()(const Rational& x) const {
    if (x < breaks.front() || x >= breaks.back()) return 0;
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return values[static_cast<std::size_t>(it - breaks.begin() - 1)];
}

// ---- UniformMixture -----------------------------------------------------------

Rational UniformMixture::total_weight() const {
    Rational w = 0;
    for (const auto& c : components) w += c.weight;
    return w;
}

Rational UniformMixture::density_at(const Rational& x) const {
    Rational total = 0;
    for (const auto& c : components) {
        if (x >= c.a && x < c.b) total += c.weight / (c.b - c.a);
    }
    return total;
}

Rational UniformMixture::total_variation() const {
    Rational tv = 0;
    for (const auto& c : components) tv += 2 * c.weight / (c.b - c.a);
    return tv;
}

UniformMixture decompose_step_density(const StepDensity& p) {
    UniformMixture out;
    std::vector<Rational> v = p.values;
    // half-open cell ranges still to process
    std::vector<std::pair<std::size_t, std::size_t>> pending{{0, v.size()}};
    while (!pending.empty()) {
        auto [lo, hi] = pending.back();
        pending.pop_back();
        while (lo < hi && v[lo] == 0) ++lo;
        while (hi > lo && v[hi - 1] == 0) --hi;
        if (lo == hi) continue;
        const auto zero = std::find(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi),
                                    Rational(0));
        if (zero != v.begin() + static_cast<std::ptrdiff_t>(hi)) {
            const auto z = static_cast<std::size_t>(zero - v.begin());
            pending.emplace_back(z + 1, hi);
            pending.emplace_back(lo, z);
            continue;
        }
        const Rational c = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo),
                                             v.begin() + static_cast<std::ptrdiff_t>(hi));
        out.components.push_back({p.breaks[lo], p.breaks[hi], c * (p.breaks[hi] - p.breaks[lo])});
        for (std::size_t k = lo; k < hi; ++k) v[k] -= c;
        pending.emplace_back(lo, hi);
    }
    return out;
}

bool reconstructs(const UniformMixture& m, const StepDensity& p) {
    if (m.total_weight() != 1) return false;
    for (const auto& c : m.components) {
        if (!(c.weight > 0) || !(c.b > c.a)) return false;
        if (!std::binary_search(p.breaks.begin(), p.breaks.end(), c.a)) return false;
        if (!std::binary_search(p.breaks.begin(), p.breaks.end(), c.b)) return false;
    }
    // every component endpoint is a breakpoint, so one probe per cell suffices
    for (int k = 0; k < p.cells(); ++k) {
        if (m.density_at(p.breaks[static_cast<std::size_t>(k)]) != p.values[static_cast<std::size_t>(k)]) return false;
    }
    return true;
}

nlohmann::json to_json(const UniformMixture& m) {
    auto list = nlohmann::json::array();
    for (const auto& c : m.components) {
        list.push_back({{"a", c.a.str()}, {"b", c.b.str()}, {"weight", c.weight.str()}});
    }
    return list;
}

StepDensity read_step_density(std::istream& in) {
    std::vector<Rational> breaks;
    std::vector<Rational> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::stringstream ss(line);
        std::vector<std::string> fields;
        for (std::string f; ss >> f;) fields.push_back(f);
        if (fields.empty()) continue;
        if (fields.size() != 3) {
            throw std::invalid_argument("step density line " + std::to_string(lineno) + ": expected 'left,right,value'");
        }
        if (lineno == 1 && fields[0] == "left") continue;
        Rational left, right, value;
        try {
            left = parse_rational(fields[0]);
            right = parse_rational(fields[1]);
            value = parse_rational(fields[2]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("step density line " + std::to_string(lineno) + ": " + e.what());
        }
        if (breaks.empty()) {
            breaks.push_back(left);
        } else if (left != breaks.back()) {
            throw std::invalid_argument("step density line " + std::to_string(lineno) + ": cells must be consecutive");
        }
        breaks.push_back(right);
        values.push_back(value);
    }
    return StepDensity::normalized(std::move(breaks), std::move(values));
}

StepDensity read_step_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open step density file '" + path + "'");
    return read_step_density(in);
}

GridDensity to_grid(const StepDensity& p, double dx, double pad) {
    const double a = to_double(p.breaks.front());
    const double b = to_double(p.breaks.back());
    std::vector<double> edges;
    for (const auto& x : p.breaks) edges.push_back(to_double(x));
    std::vector<double> heights;
    for (const auto& v : p.values) heights.push_back(to_double(v));
    const auto count = static_cast<Eigen::Index>(std::llround((b - a + 2.0 * pad) / dx));
    return sample_function(
        [&](double x) {
            if (x < edges.front() || x >= edges.back()) return 0.0;
            const auto it = std::upper_bound(edges.begin(), edges.end(), x);
            return heights[static_cast<std::size_t>(it - edges.begin() - 1)];
        },
        a - pad + 0.5 * dx, dx, count);
}

// ---- bounds -----------------------------------------------------------------

double three_uniform_fisher_bound(double a1, double a2, double a3) {
    if (!(a1 > 0.0) || !(a2 > 0.0) || !(a3 > 0.0)) throw std::invalid_argument("three_uniform_fisher_bound: lengths must be positive");
    return 2.0 * (1.0 / (a1 * a2) + 1.0 / (a1 * a3) + 1.0 / (a2 * a3));
}

double tv_product_fisher_bound(double tv1, double tv2, double tv3) {
    return 0.5 * (tv1 * tv2 + tv1 * tv3 + tv2 * tv3);
}

double tv_product_fisher_bound(const StepDensity& p1, const StepDensity& p2, const StepDensity& p3) {
    return tv_product_fisher_bound(to_double(p1.total_variation()), to_double(p2.total_variation()),
                                   to_double(p3.total_variation()));
}

double tv_product_fisher_bound(const GridDensity& p1, const GridDensity& p2, const GridDensity& p3) {
    return tv_product_fisher_bound(total_variation_norm(p1), total_variation_norm(p2), total_variation_norm(p3));
}

namespace {

// Trapezoidal integrals of g over |t| <= tmax / 2 and |t| <= tmax.
template <class G>
std::pair<double, double> symmetric_integrals(const CharFunctionGrid& f, G&& g) {
    const auto half = static_cast<Eigen::Index>(std::llround(f.tmax / f.dt));
    double inner = 0.0;
    double outer = 0.0;
    for (Eigen::Index m = -half; m <= half; ++m) {
        const double t = static_cast<double>(m) * f.dt;
        const double w = (m == -half || m == half) ? 0.5 : 1.0;
        const double v = g(t);
        outer += w * v;
        if (2 * std::abs(m) < half) {
            inner += v;
        } else if (2 * std::abs(m) == half) {
            inner += 0.5 * v;
        }
    }
    return {inner * f.dt, outer * f.dt};
}

bool converged(const std::pair<double, double>& inner_outer) {
    const auto [inner, outer] = inner_outer;
    return std::isfinite(outer) && outer - inner <= 1e-4 * std::abs(outer);
}

constexpr const char* kInapplicable = "bound inapplicable: integral does not converge within |t| <= tmax";

}  // namespace

CfBound cf_tv_bound_first(const CharFunctionGrid& f) {
    const auto integral = symmetric_integrals(f, [&](double t) {
        return std::abs(t * f(t, 2)) + 2.0 * std::abs(f(t, 1)) + std::abs(t * f(t, 0));
    });
    CfBound out;
    out.applicable = converged(integral);
    out.value = out.applicable ? 0.5 * integral.second : std::numeric_limits<double>::infinity();
    out.verdict = out.applicable ? "ok" : kInapplicable;
    return out;
}

CfBound cf_tv_bound_second(const CharFunctionGrid& f) {
    const auto a = symmetric_integrals(f, [&](double t) { return std::norm(t * f(t, 0)); });
    const auto b = symmetric_integrals(f, [&](double t) { return std::norm(f(t, 0) + t * f(t, 1)); });
    CfBound out;
    out.applicable = converged(a) && converged(b);
    out.value = out.applicable ? std::pow(a.second * b.second, 0.25) : std::numeric_limits<double>::infinity();
    out.verdict = out.applicable ? "ok" : kInapplicable;
    return out;
}

ThreeSumFisherBound three_sum_fisher_bound(const CharFunctionGrid& f) {
    ThreeSumFisherBound out;
    const auto first = cf_tv_bound_first(f);
    const auto second = cf_tv_bound_second(f);
    // both reduce to (3/2) B^2 with B the corresponding bound on ||p||_TV
    out.first = first;
    out.second = second;
    if (first.applicable) out.first.value = 1.5 * first.value * first.value;
    if (second.applicable) out.second.value = 1.5 * second.value * second.value;
    out.applicable = first.applicable || second.applicable;
    out.best = std::min(out.first.value, out.second.value);
    return out;
}

nlohmann::json to_json(const CfBound& b) {
    nlohmann::json j{{"applicable", b.applicable}, {"verdict", b.verdict}};
    j["value"] = b.applicable ? nlohmann::json(b.value) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const ThreeSumFisherBound& b) {
    nlohmann::json j{{"first", to_json(b.first)}, {"second", to_json(b.second)}, {"applicable", b.applicable}};
    j["best"] = b.applicable ? nlohmann::json(b.best) : nlohmann::json(nullptr);
    return j;
}

}  // namespace fisherclt
