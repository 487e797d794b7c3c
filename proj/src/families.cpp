#include "fisherclt/families.hpp"

#include "fisherclt/gauss_poly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fisherclt {

namespace {

using cd = std::complex<double>;
constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

// Density that is a polynomial on [lo, hi] and zero elsewhere.
struct PolySegment {
    double lo;
    double hi;
    Poly<double> p;
};

PolySegment standardized_segment(FamilyKind kind) {
    if (kind == FamilyKind::standardized_uniform) {
        const double a = std::sqrt(3.0);
        return {-a, a, Poly<double>{1.0 / (2.0 * a)}};
    }
    // Beta(3,3) rescaled: (30 / sqrt 28) (1/4 - x^2 / 28)^2 on [-sqrt 7, sqrt 7]
    const double c = 30.0 / std::sqrt(28.0);
    return {-std::sqrt(7.0), std::sqrt(7.0), Poly<double>{c / 16.0, 0.0, -c / 56.0, 0.0, c / 784.0}};
}

// l-th derivative of the characteristic function of a polynomial segment density:
// integral of (i x)^l p(x) e^{itx} over [lo, hi].
cd segment_cf(const PolySegment& seg, double t, int l) {
    std::vector<cd> hc(static_cast<std::size_t>(seg.p.degree() + 1 + l), cd(0.0));
    const cd il = ipow(cd(0.0, 1.0), l);
    for (int k = 0; k <= seg.p.degree(); ++k) hc[static_cast<std::size_t>(k + l)] = il * seg.p.coeff(k);
    Poly<cd> h(hc);

    const double reach = std::max(std::abs(seg.lo), std::abs(seg.hi));
    // a constant segment has no cancellation in the by-parts form
    const double taylor_reach = seg.p.degree() == 0 ? 0.5 : 6.0;
    if (std::abs(t) * reach < taylor_reach) {
        // Taylor series in t: sum_k (it)^k / k! * integral h(x) x^k dx
        cd total(0.0);
        cd factor(1.0);  // (it)^k / k!
        for (int k = 0; k < 200; ++k) {
            cd moment(0.0);
            double bound = 0.0;  // bounds |moment|; odd moments of symmetric segments vanish
            for (int c = 0; c <= h.degree(); ++c) {
                const int e = c + k + 1;
                moment += h.coeff(c) * ((std::pow(seg.hi, e) - std::pow(seg.lo, e)) / e);
                bound += std::abs(h.coeff(c)) * 2.0 * std::pow(reach, e) / e;
            }
            total += factor * moment;
            if (std::abs(factor) * bound < 1e-18 * std::max(1.0, std::abs(total))) break;
            factor *= cd(0.0, t) / static_cast<double>(k + 1);
        }
        return total;
    }
    // Repeated integration by parts; exact for polynomial h.
    const cd it(0.0, t);
    const cd e_hi = std::exp(it * seg.hi);
    const cd e_lo = std::exp(it * seg.lo);
    cd total(0.0);
    Poly<cd> d = h;
    cd denom = it;
    double sign = 1.0;
    while (!d.is_zero()) {
        total += sign * (d(cd(seg.hi)) * e_hi - d(cd(seg.lo)) * e_lo) / denom;
        d = derivative(d);
        denom *= it;
        sign = -sign;
    }
    return total;
}

double segment_density(const PolySegment& seg, double x, int l) {
    if (x < seg.lo || x > seg.hi) return 0.0;
    Poly<double> d = seg.p;
    for (int i = 0; i < l; ++i) d = derivative(d);
    return d(x);
}

std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

std::string join(const std::vector<Rational>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out;
}


}  // namespace

cd ipow(cd z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cd result(1.0);
    while (n > 0) {
        if (n & 1) result *= z;
        z *= z;
        n >>= 1;
    }
    return result;
}

Family Family::two_point(Rational p) {
    if (p <= 0 || p >= 1) throw std::invalid_argument("two_point_mixture: p must lie in (0, 1)");
    Family f = of(FamilyKind::two_point_mixture);
    f.p = std::move(p);
    std::tie(f.raw_mean, f.raw_sd) = f.raw_location_scale();
    return f;
}

Family Family::gaussian_mixture(std::vector<Rational> w, std::vector<Rational> mu, std::vector<Rational> sigma) {
    if (w.empty() || w.size() != mu.size() || w.size() != sigma.size()) {
        throw std::invalid_argument("gaussian_mixture: w, mu, sigma must be non-empty and of equal length");
    }
    Rational total(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0) throw std::invalid_argument("gaussian_mixture: weights must be positive");
        if (sigma[i] <= 0) throw std::invalid_argument("gaussian_mixture: sigmas must be positive");
        total += w[i];
    }
    if (total != 1) throw std::invalid_argument("gaussian_mixture: weights must sum to 1");
    Family f = of(FamilyKind::gaussian_mixture);
    f.weights = std::move(w);
    f.means = std::move(mu);
    f.sigmas = std::move(sigma);
    std::tie(f.raw_mean, f.raw_sd) = f.raw_location_scale();
    for (std::size_t i = 0; i < f.weights.size(); ++i) {
        f.components.push_back({to_double(f.weights[i]), (to_double(f.means[i]) - f.raw_mean) / f.raw_sd,
                                to_double(f.sigmas[i]) / f.raw_sd});
    }
    return f;
}

Family Family::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);

    auto param_map = [&]() {
        std::vector<std::pair<std::string, std::string>> kv;
        std::stringstream ss(params);
        std::string item;
        while (std::getline(ss, item, ';')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("family parameter without '=': " + item);
            kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        return kv;
    };

    if (name == "gaussian" || name == "normal") return gaussian();
    if (name == "standardized_exponential" || name == "exponential") return exponential();
    if (name == "standardized_uniform" || name == "uniform") return uniform();
    if (name == "beta33") return beta33();
    if (name == "bernoulli") return bernoulli();
    if (name == "two_point_mixture") {
        Rational p(1, 2);
        for (const auto& [k, v] : param_map()) {
            if (k != "p") throw std::invalid_argument("two_point_mixture: unknown parameter " + k);
            p = parse_rational(v);
        }
        return two_point(p);
    }
    if (name == "gaussian_mixture") {
        std::vector<Rational> w{Rational(1, 2), Rational(1, 2)};
        std::vector<Rational> mu{Rational(-1), Rational(1)};
        std::vector<Rational> sigma{Rational(1, 2), Rational(1, 2)};
        for (const auto& [k, v] : param_map()) {
            if (k == "w") {
                w = parse_list(v);
            } else if (k == "mu") {
                mu = parse_list(v);
            } else if (k == "sigma") {
                sigma = parse_list(v);
            } else {
                throw std::invalid_argument("gaussian_mixture: unknown parameter " + k);
            }
        }
        return gaussian_mixture(w, mu, sigma);
    }
    throw std::invalid_argument("unknown family tag '" + text + "'");
}

std::string Family::tag() const {
    switch (kind) {
        case FamilyKind::gaussian: return "gaussian";
        case FamilyKind::standardized_exponential: return "standardized_exponential";
        case FamilyKind::standardized_uniform: return "standardized_uniform";
        case FamilyKind::beta33: return "beta33";
        case FamilyKind::two_point_mixture: return "two_point_mixture:p=" + p.str();
        case FamilyKind::gaussian_mixture:
            return "gaussian_mixture:w=" + join(weights) + ";mu=" + join(means) + ";sigma=" + join(sigmas);
    }
    return "unknown";
}

std::vector<Rational> Family::raw_moments(int s) const {
    std::vector<Rational> m;
    for (int r = 1; r <= s; ++r) {
        switch (kind) {
            case FamilyKind::gaussian: m.push_back(gaussian_moment<Rational>(r)); break;
            case FamilyKind::standardized_exponential: m.push_back(factorial<Rational>(r)); break;
            case FamilyKind::standardized_uniform: m.push_back(Rational(1, r + 1)); break;
            case FamilyKind::beta33: {
                Rational v(1);
                for (int i = 0; i < r; ++i) v *= Rational(3 + i, 6 + i);
                m.push_back(v);
                break;
            }
            case FamilyKind::two_point_mixture: m.push_back(p); break;
            case FamilyKind::gaussian_mixture: {
                Rational v(0);
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    Rational comp(0);
                    for (int k = 0; k <= r; ++k) {
                        Rational binom(1);
                        for (int q = 1; q <= k; ++q) binom = binom * Rational(r - k + q) / Rational(q);
                        comp += binom * power(means[i], r - k) * power(sigmas[i], k) * gaussian_moment<Rational>(k);
                    }
                    v += weights[i] * comp;
                }
                m.push_back(v);
                break;
            }
        }
    }
    return m;
}

std::pair<double, double> Family::raw_location_scale() const {
    const auto m = raw_moments(2);
    const Rational var = m[1] - m[0] * m[0];
    return {to_double(m[0]), std::sqrt(to_double(var))};
}

cd Family::cf(double t, int l) const {
    if (l < 0 || l > 2) throw std::invalid_argument("Family::cf: derivative order must be 0, 1 or 2");
    switch (kind) {
        case FamilyKind::gaussian: {
            const double f = std::exp(-0.5 * t * t);
            if (l == 0) return f;
            if (l == 1) return -t * f;
            return (t * t - 1.0) * f;
        }
        case FamilyKind::standardized_exponential: {
            const cd one_minus_it(1.0, -t);
            const cd f = std::exp(cd(0.0, -t)) / one_minus_it;
            if (l == 0) return f;
            const cd d1 = -t / one_minus_it;
            if (l == 1) return f * d1;
            const cd d2 = -1.0 / (one_minus_it * one_minus_it);
            return f * (d1 * d1 + d2);
        }
        case FamilyKind::standardized_uniform:
        case FamilyKind::beta33: return segment_cf(standardized_segment(kind), t, l);
        case FamilyKind::two_point_mixture: {
            const double m = raw_mean;
            const double sd = raw_sd;
            const double pd = to_double(p);
            const double hi = (1.0 - m) / sd;
            const double lo = (0.0 - m) / sd;
            const cd ihi = ipow(cd(0.0, hi), l);
            const cd ilo = ipow(cd(0.0, lo), l);
            return pd * ihi * std::exp(cd(0.0, t * hi)) + (1.0 - pd) * ilo * std::exp(cd(0.0, t * lo));
        }
        case FamilyKind::gaussian_mixture: {
            cd total(0.0);
            for (const auto& [weight, mean, sigma] : components) {
                const cd base = std::exp(cd(-0.5 * sigma * sigma * t * t, mean * t));
                const cd slope(-sigma * sigma * t, mean);
                cd term = base;
                if (l == 1) term = slope * base;
                if (l == 2) term = (slope * slope - sigma * sigma) * base;
                total += weight * term;
            }
            return total;
        }
    }
    return 0.0;
}

cd Family::normalized_sum_cf(double t, int n, int l) const {
    if (n < 1) throw std::invalid_argument("normalized_sum_cf: n must be at least 1");
    if (kind == FamilyKind::gaussian) return cf(t, l);
    const double rn = std::sqrt(static_cast<double>(n));
    const double tau = t / rn;
    if (kind == FamilyKind::standardized_exponential) {
        // n log f(tau) with log f(tau) = -i tau - log(1 - i tau), split for accuracy
        const cd log_f(-0.5 * std::log1p(tau * tau), std::atan(tau) - tau);
        const cd f = std::exp(static_cast<double>(n) * log_f);
        if (l == 0) return f;
        const cd one_minus_it(1.0, -tau);
        const cd g1 = rn * (-tau / one_minus_it);
        if (l == 1) return f * g1;
        const cd g2 = -1.0 / (one_minus_it * one_minus_it);
        return f * (g1 * g1 + g2);
    }
    const cd f0 = cf(tau, 0);
    if (l == 0) return ipow(f0, n);
    const cd f1 = cf(tau, 1);
    if (l == 1) return rn * ipow(f0, n - 1) * f1;
    const cd f2 = cf(tau, 2);
    const cd lead = n >= 2 ? static_cast<double>(n - 1) * ipow(f0, n - 2) * f1 * f1 : cd(0.0);
    return lead + ipow(f0, n - 1) * f2;
}

double Family::density(double x, int l) const {
    if (l < 0 || l > 2) throw std::invalid_argument("Family::density: derivative order must be 0, 1 or 2");
    switch (kind) {
        case FamilyKind::gaussian: {
            const double phi = kInvSqrt2Pi * std::exp(-0.5 * x * x);
            if (l == 0) return phi;
            if (l == 1) return -x * phi;
            return (x * x - 1.0) * phi;
        }
        case FamilyKind::standardized_exponential: {
            if (x < -1.0) return 0.0;
            const double v = std::exp(-(x + 1.0));
            return l == 1 ? -v : v;
        }
        case FamilyKind::standardized_uniform:
        case FamilyKind::beta33: return segment_density(standardized_segment(kind), x, l);
        case FamilyKind::two_point_mixture: throw std::invalid_argument("two_point_mixture has no density");
        case FamilyKind::gaussian_mixture: {
            double total = 0.0;
            for (const auto& [weight, mean, sigma] : components) {
                const double z = (x - mean) / sigma;
                const double base = kInvSqrt2Pi * std::exp(-0.5 * z * z) / sigma;
                double term = base;
                if (l == 1) term = -z / sigma * base;
                if (l == 2) term = (z * z - 1.0) / (sigma * sigma) * base;
                total += weight * term;
            }
            return total;
        }
    }
    return 0.0;
}

std::pair<double, double> Family::support() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind) {
        case FamilyKind::standardized_exponential: return {-1.0, inf};
        case FamilyKind::standardized_uniform: return {-std::sqrt(3.0), std::sqrt(3.0)};
        case FamilyKind::beta33: return {-std::sqrt(7.0), std::sqrt(7.0)};
        case FamilyKind::two_point_mixture: {
            const double m = raw_mean;
            const double sd = raw_sd;
            return {-m / sd, (1.0 - m) / sd};
        }
        default: return {-inf, inf};
    }
}

}  // namespace fisherclt
