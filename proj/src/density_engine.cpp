#include "fisherclt/density_engine.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace fisherclt {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

Eigen::ArrayXd linear_convolution(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
    const std::size_t out_len = static_cast<std::size_t>(a.size() + b.size() - 1);
    const std::size_t nfft = next_pow2(out_len);
    std::vector<double> ta(nfft, 0.0), tb(nfft, 0.0);
    std::copy(a.data(), a.data() + a.size(), ta.begin());
    std::copy(b.data(), b.data() + b.size(), tb.begin());
    Eigen::FFT<double> fft;
    std::vector<cd> fa, fb;
    fft.fwd(fa, ta);
    fft.fwd(fb, tb);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    std::vector<double> prod;
    fft.inv(prod, fa);
    Eigen::ArrayXd out(static_cast<Eigen::Index>(out_len));
    for (std::size_t i = 0; i < out_len; ++i) out[static_cast<Eigen::Index>(i)] = prod[i];
    return out;
}

Eigen::ArrayXd pad_zeros(const Eigen::ArrayXd& v, Eigen::Index left, Eigen::Index right) {
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(v.size() + left + right);
    out.segment(left, v.size()) = v;
    return out;
}

double edge_value(const Eigen::ArrayXcd& v) {
    return std::max(std::abs(v[0]), std::abs(v[v.size() - 1]));
}

// Linear interpolation of a grid on -tmax + m dt.
cd interpolate_grid(const Eigen::ArrayXcd& v, double tmax, double dt, double t) {
    const double f = (t + tmax) / dt;
    const auto last = v.size() - 1;
    if (f <= 0.0) return v[0];
    if (f >= static_cast<double>(last)) return v[last];
    const auto i = static_cast<Eigen::Index>(std::floor(f));
    const double w = f - static_cast<double>(i);
    return (1.0 - w) * v[i] + w * v[i + 1];
}

}  // namespace

// ---- GridDensity ------------------------------------------------------------

Eigen::ArrayXd GridDensity::grid() const {
    return x0 + dx * Eigen::ArrayXd::LinSpaced(size(), 0.0, static_cast<double>(size() - 1));
}

double GridDensity::mean() const { return (grid() * values).sum() * dx / mass(); }

double GridDensity::variance() const {
    const double m = mean();
    return ((grid() - m).square() * values).sum() * dx / mass();
}

double GridDensity::absolute_moment(double s) const {
    return (grid().abs().pow(s) * values).sum() * dx / mass();
}

// ---- construction -----------------------------------------------------------

GridDensity sample_function(const std::function<double(double)>& p, double x0, double dx, Eigen::Index count,
                            const std::function<double(double)>& dp, const std::function<double(double)>& d2p) {
    if (!(dx > 0.0) || count < 3) throw std::invalid_argument("sample_function: need dx > 0 and at least 3 points");
    GridDensity g;
    g.x0 = x0;
    g.dx = dx;
    g.values.resize(count);
    for (Eigen::Index i = 0; i < count; ++i) g.values[i] = p(g.x(i));
    if (dp) {
        g.d1 = Eigen::ArrayXd(count);
        for (Eigen::Index i = 0; i < count; ++i) (*g.d1)[i] = dp(g.x(i));
    }
    if (d2p) {
        g.d2 = Eigen::ArrayXd(count);
        for (Eigen::Index i = 0; i < count; ++i) (*g.d2)[i] = d2p(g.x(i));
    }
    return widen_for_tails(normalize(std::move(g)));
}

GridDensity sample_family(const Family& family, const GridSpec& spec) {
    if (!family.has_density()) throw std::invalid_argument(family.tag() + " has no density");
    return sample_function([&](double x) { return family.density(x, 0); }, -spec.xmax, spec.dx(), spec.N,
                           [&](double x) { return family.density(x, 1); },
                           [&](double x) { return family.density(x, 2); });
}

GridDensity uniform_density(double a, double b, double dx, double pad) {
    if (!(b > a) || !(dx > 0.0) || pad < 0.0) throw std::invalid_argument("uniform_density: need a < b, dx > 0, pad >= 0");
    const double height = 1.0 / (b - a);
    const auto count = static_cast<Eigen::Index>(std::llround((b - a + 2.0 * pad) / dx));
    return sample_function([=](double x) { return (x > a && x < b) ? height : 0.0; }, a - pad + 0.5 * dx, dx, count);
}

GridDensity gaussian_density(double mean, double sd, const GridSpec& spec) {
    if (!(sd > 0.0)) throw std::invalid_argument("gaussian_density: sd must be positive");
    const auto phi = [=](double x) {
        const double z = (x - mean) / sd;
        return std::exp(-0.5 * z * z) / (sd * std::sqrt(kTwoPi));
    };
    return sample_function(
        phi, -spec.xmax, spec.dx(), spec.N, [=](double x) { return -(x - mean) / (sd * sd) * phi(x); },
        [=](double x) {
            const double z = (x - mean) / sd;
            return (z * z - 1.0) / (sd * sd) * phi(x);
        });
}

GridDensity widen_for_tails(GridDensity p) {
    for (int round = 0; round < 12; ++round) {
        const Eigen::Index n = p.size();
        const Eigen::Index lo = n / 20;
        const Eigen::Index hi = n - n / 20;
        const double outside = (p.values.head(lo).abs().sum() + p.values.tail(n - hi).abs().sum()) * p.dx;
        if (outside < 1e-6) return p;
        const Eigen::Index pad = n / 2;
        p.values = pad_zeros(p.values, pad, pad);
        if (p.d1) p.d1 = pad_zeros(*p.d1, pad, pad);
        if (p.d2) p.d2 = pad_zeros(*p.d2, pad, pad);
        p.x0 -= static_cast<double>(pad) * p.dx;
    }
    throw NumericalError("widen_for_tails: tail mass does not shrink under padding");
}

GridDensity normalize(GridDensity p) {
    const double negative = (-p.values).max(0.0).sum() * p.dx;
    p.values = p.values.max(0.0);
    p.clipped_mass += negative;
    const double total = p.values.sum() * p.dx;
    if (!(total > 0.0) || !std::isfinite(total)) throw std::domain_error("degenerate distribution");
    p.values /= total;
    if (p.d1) *p.d1 /= total;
    if (p.d2) *p.d2 /= total;
    return p;
}

Eigen::ArrayXd first_derivative(const GridDensity& p) {
    if (p.d1) return *p.d1;
    const Eigen::Index n = p.size();
    Eigen::ArrayXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double right = i + 1 < n ? p.values[i + 1] : 0.0;
        const double left = i > 0 ? p.values[i - 1] : 0.0;
        d[i] = (right - left) / (2.0 * p.dx);
    }
    return d;
}

Eigen::ArrayXd second_derivative(const GridDensity& p) {
    if (p.d2) return *p.d2;
    const Eigen::Index n = p.size();
    Eigen::ArrayXd d(n);
    const double h2 = p.dx * p.dx;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double right = i + 1 < n ? p.values[i + 1] : 0.0;
        const double left = i > 0 ? p.values[i - 1] : 0.0;
        d[i] = (right - 2.0 * p.values[i] + left) / h2;
    }
    return d;
}

double interpolate(const GridDensity& p, double x) {
    const double f = (x - p.x0) / p.dx;
    if (f < 0.0 || f > static_cast<double>(p.size() - 1)) return 0.0;
    const auto i = std::min(static_cast<Eigen::Index>(std::floor(f)), p.size() - 2);
    const double w = f - static_cast<double>(i);
    return (1.0 - w) * p.values[i] + w * p.values[i + 1];
}

GridDensity resample(const GridDensity& p, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("resample: dx must be positive");
    const double span = p.dx * static_cast<double>(p.size() - 1);
    const auto count = static_cast<Eigen::Index>(std::floor(span / dx)) + 1;
    GridDensity q;
    q.x0 = p.x0;
    q.dx = dx;
    q.values.resize(count);
    for (Eigen::Index i = 0; i < count; ++i) q.values[i] = interpolate(p, q.x(i));
    q.clipped_mass = p.clipped_mass;
    return normalize(std::move(q));
}

GridDensity affine_image(const GridDensity& p, double a, double b) {
    if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("affine_image: scale must be finite and nonzero");
    const double s = std::abs(a);
    GridDensity q;
    q.dx = s * p.dx;
    q.clipped_mass = p.clipped_mass;
    q.values = p.values / s;
    if (p.d1) q.d1 = *p.d1 / (a * s);
    if (p.d2) q.d2 = *p.d2 / (a * a * s);
    if (a > 0.0) {
        q.x0 = a * p.x0 + b;
    } else {
        q.x0 = a * p.x(p.size() - 1) + b;
        q.values.reverseInPlace();
        if (q.d1) q.d1->reverseInPlace();
        if (q.d2) q.d2->reverseInPlace();
    }
    return q;
}

GridDensity standardize(const GridDensity& p) {
    const double var = p.variance();
    if (!(var > 0.0)) throw std::domain_error("degenerate distribution");
    const double sd = std::sqrt(var);
    return affine_image(p, 1.0 / sd, -p.mean() / sd);
}

GridDensity mixture(const std::vector<GridDensity>& parts, const std::vector<double>& weights) {
    if (parts.empty() || parts.size() != weights.size()) {
        throw std::invalid_argument("mixture: need matching, non-empty parts and weights");
    }
    GridDensity out = parts.front();
    out.values.setZero();
    bool d1 = true, d2 = true;
    for (const auto& part : parts) {
        if (part.size() != out.size() || std::abs(part.x0 - out.x0) > 1e-12 * std::max(1.0, std::abs(out.x0)) ||
            std::abs(part.dx - out.dx) > 1e-14 * out.dx) {
            throw std::invalid_argument("mixture: parts must share one grid");
        }
        d1 = d1 && part.d1.has_value();
        d2 = d2 && part.d2.has_value();
    }
    out.d1.reset();
    out.d2.reset();
    if (d1) out.d1 = Eigen::ArrayXd::Zero(out.size());
    if (d2) out.d2 = Eigen::ArrayXd::Zero(out.size());
    out.clipped_mass = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("mixture: weights must be nonnegative");
        out.values += weights[i] * parts[i].values;
        if (d1) *out.d1 += weights[i] * *parts[i].d1;
        if (d2) *out.d2 += weights[i] * *parts[i].d2;
        out.clipped_mass += weights[i] * parts[i].clipped_mass;
    }
    return normalize(std::move(out));
}

GridDensity convolve(const GridDensity& p, const GridDensity& q_in) {
    const GridDensity q = std::abs(q_in.dx - p.dx) > 1e-12 * p.dx ? resample(q_in, p.dx) : q_in;
    GridDensity r;
    r.x0 = p.x0 + q.x0;
    r.dx = p.dx;
    r.values = linear_convolution(p.values, q.values) * p.dx;
    if (p.d1) {
        r.d1 = linear_convolution(*p.d1, q.values) * p.dx;
    } else if (q.d1) {
        r.d1 = linear_convolution(p.values, *q.d1) * p.dx;
    }
    if (p.d1 && q.d1) {
        r.d2 = linear_convolution(*p.d1, *q.d1) * p.dx;
    } else if (p.d2) {
        r.d2 = linear_convolution(*p.d2, q.values) * p.dx;
    } else if (q.d2) {
        r.d2 = linear_convolution(p.values, *q.d2) * p.dx;
    }
    r.clipped_mass = p.clipped_mass + q.clipped_mass;
    return widen_for_tails(normalize(std::move(r)));
}

// ---- characteristic functions -----------------------------------------------

std::complex<double> CharFunctionGrid::operator()(double t, int l) const {
    if (l < 0 || l > 2) throw std::invalid_argument("CharFunctionGrid: derivative order must be 0, 1 or 2");
    if (family) return family->normalized_sum_cf(t, n, l);
    const Eigen::ArrayXcd* grid = &values;
    if (l == 1) {
        if (!d1) throw std::invalid_argument("CharFunctionGrid: no first-derivative grid");
        grid = &*d1;
    } else if (l == 2) {
        if (!d2) throw std::invalid_argument("CharFunctionGrid: no second-derivative grid");
        grid = &*d2;
    }
    if (std::abs(t) > tmax * (1.0 + 1e-12)) {
        if (edge_value(*grid) < 1e-14) return 0.0;
        throw NumericalError("cf grid ends at |t| = " + std::to_string(tmax) +
                             " before the cf has decayed; cf tail too heavy; increase n or tmax");
    }
    return interpolate_grid(*grid, tmax, dt, t);
}

CharFunctionGrid cf_from_family(const Family& family, double tmax, double dt) {
    if (!(tmax > 0.0) || !(dt > 0.0) || dt >= tmax) throw std::invalid_argument("cf_from_family: need 0 < dt < tmax");
    const auto half = static_cast<Eigen::Index>(std::llround(tmax / dt));
    CharFunctionGrid f;
    f.dt = dt;
    f.tmax = static_cast<double>(half) * dt;
    f.family = family;
    f.values.resize(2 * half + 1);
    for (Eigen::Index m = 0; m < f.size(); ++m) f.values[m] = family.cf(f.t(m), 0);
    f.values[half] = 1.0;
    return f;
}

CharFunctionGrid cf_from_density(const GridDensity& p) {
    const std::size_t nfft = next_pow2(static_cast<std::size_t>(p.size()));
    std::vector<double> v0(nfft, 0.0), v1(nfft, 0.0), v2(nfft, 0.0);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double x = p.x(k);
        v0[static_cast<std::size_t>(k)] = p.values[k];
        v1[static_cast<std::size_t>(k)] = x * p.values[k];
        v2[static_cast<std::size_t>(k)] = x * x * p.values[k];
    }
    Eigen::FFT<double> fft;
    std::vector<cd> X0, X1, X2;
    fft.fwd(X0, v0);
    fft.fwd(X1, v1);
    fft.fwd(X2, v2);

    const auto half = static_cast<Eigen::Index>(nfft / 2 - 1);
    CharFunctionGrid f;
    f.dt = kTwoPi / (static_cast<double>(nfft) * p.dx);
    f.tmax = static_cast<double>(half) * f.dt;
    f.values.resize(2 * half + 1);
    f.d1 = Eigen::ArrayXcd(2 * half + 1);
    f.d2 = Eigen::ArrayXcd(2 * half + 1);
    const double mass = p.mass();
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const Eigen::Index m = j - half;
        const auto idx = static_cast<std::size_t>((m + static_cast<Eigen::Index>(nfft)) % static_cast<Eigen::Index>(nfft));
        const double t = static_cast<double>(m) * f.dt;
        // sum_k v_k e^{i t x_k} = e^{i t x0} conj(X_m) for real v
        const cd shift = std::exp(cd(0.0, t * p.x0)) * (p.dx / mass);
        f.values[j] = shift * std::conj(X0[idx]);
        (*f.d1)[j] = cd(0.0, 1.0) * shift * std::conj(X1[idx]);
        (*f.d2)[j] = -shift * std::conj(X2[idx]);
    }
    return f;
}

std::complex<double> cf_at(const GridDensity& p, double t, int l) {
    if (l < 0 || l > 2) throw std::invalid_argument("cf_at: derivative order must be 0, 1 or 2");
    cd total(0.0);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double x = p.x(k);
        total += ipow(cd(0.0, x), l) * p.values[k] * std::exp(cd(0.0, t * x));
    }
    return total * p.dx / p.mass();
}

CharFunctionGrid normalized_sum_cf(const CharFunctionGrid& f1, int n, bool allow_grid_power) {
    if (n < 1) throw std::invalid_argument("normalized_sum_cf: n must be at least 1");
    if (n == 1) return f1;
    CharFunctionGrid fn = f1;
    if (f1.family) {
        fn.n = f1.n * n;
        for (Eigen::Index m = 0; m < fn.size(); ++m) fn.values[m] = fn(fn.t(m), 0);
        return fn;
    }
    if (n > 32 && !allow_grid_power) {
        throw NumericalError("normalized_sum_cf: powering an interpolated cf to n = " + std::to_string(n) +
                             " > 32 amplifies interpolation error; pass the override to force it");
    }
    const double rn = std::sqrt(static_cast<double>(n));
    const bool has_d1 = f1.d1.has_value();
    const bool has_d2 = has_d1 && f1.d2.has_value();
    if (!has_d1) fn.d1.reset();
    if (!has_d2) fn.d2.reset();
    for (Eigen::Index m = 0; m < fn.size(); ++m) {
        const double tau = fn.t(m) / rn;
        const cd f = f1(tau, 0);
        fn.values[m] = ipow(f, n);
        if (has_d1) {
            const cd g = f1(tau, 1);
            (*fn.d1)[m] = rn * ipow(f, n - 1) * g;
            if (has_d2) {
                (*fn.d2)[m] = static_cast<double>(n - 1) * ipow(f, n - 2) * g * g + ipow(f, n - 1) * f1(tau, 2);
            }
        }
    }
    return fn;
}

Eigen::ArrayXd invert_cf(const CharFunctionGrid& f, int l, const GridSpec& spec) {
    if (l < 0 || l > 2) throw std::invalid_argument("invert_cf: derivative order must be 0, 1 or 2");
    if (spec.N < (1 << 14) || (spec.N & (spec.N - 1)) != 0) {
        throw std::invalid_argument("invert_cf: grid size must be a power of two and at least 2^14");
    }
    const int N = spec.N;
    const double dx = spec.dx();
    const double x0 = -spec.xmax;
    const double dt = kTwoPi / (static_cast<double>(N) * dx);
    const double tmax = 0.5 * static_cast<double>(N) * dt;

    std::vector<cd> h(static_cast<std::size_t>(N));
    double edge = 0.0;
    const int edge_band = std::max(8, N / 100);
    for (int m = 0; m < N; ++m) {
        const double t = static_cast<double>(m - N / 2) * dt;
        const cd g = ipow(cd(0.0, -t), l) * f(t, 0);
        if (m < edge_band || m >= N - edge_band) edge = std::max(edge, std::abs(g));
        h[static_cast<std::size_t>(m)] = g * std::exp(cd(0.0, -t * x0));
    }
    if (edge * tmax / std::numbers::pi >= 1e-10) {
        std::ostringstream msg;
        msg << "cf tail too heavy; increase n or tmax (|t^" << l << " f(t)| = " << edge << " near |t| = " << tmax << ")";
        throw NumericalError(msg.str());
    }
    Eigen::FFT<double> fft;
    std::vector<cd> H;
    fft.fwd(H, h);
    Eigen::ArrayXd out(N);
    const double scale = dt / kTwoPi;
    for (int k = 0; k < N; ++k) out[k] = (k % 2 == 0 ? scale : -scale) * H[static_cast<std::size_t>(k)].real();
    return out;
}

GridDensity density_from_cf(const CharFunctionGrid& f, const GridSpec& spec) {
    GridDensity p;
    p.x0 = -spec.xmax;
    p.dx = spec.dx();
    p.values = invert_cf(f, 0, spec);
    p.d1 = invert_cf(f, 1, spec);
    p.d2 = invert_cf(f, 2, spec);
    return widen_for_tails(normalize(std::move(p)));
}

// ---- decay diagnostics ------------------------------------------------------

std::pair<double, double> default_decay_window(const CharFunctionGrid& f) {
    return {std::max(1.0, f.tmax / 100.0), f.tmax / 2.0};
}

double decay_exponent(const CharFunctionGrid& f, std::pair<double, double> window) {
    const auto [lo, hi] = window;
    if (!(lo > 0.0) || !(hi > lo) || hi > f.tmax * (1.0 + 1e-12)) {
        throw std::invalid_argument("decay_exponent: window must satisfy 0 < t_lo < t_hi <= tmax");
    }
    // running supremum of |f| from the right over the positive half-grid
    const Eigen::Index zero = static_cast<Eigen::Index>(std::llround(f.tmax / f.dt));
    const Eigen::Index count = f.size() - zero;
    Eigen::ArrayXd sup(count);
    double running = 0.0;
    for (Eigen::Index m = count - 1; m >= 0; --m) {
        running = std::max(running, std::abs(f.values[zero + m]));
        sup[m] = running;
    }
    constexpr int kSamples = 64;
    std::vector<double> xs, ys;
    for (int i = 0; i < kSamples; ++i) {
        const double t = lo * std::pow(hi / lo, static_cast<double>(i) / (kSamples - 1));
        const auto m = std::min(count - 1, static_cast<Eigen::Index>(std::ceil(t / f.dt)));
        if (sup[m] < 1e-280) return std::numeric_limits<double>::infinity();
        xs.push_back(-std::log(t));
        ys.push_back(std::log(sup[m]));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

WeightedCfIntegral weighted_cf_integral(const CharFunctionGrid& f, double nu,
                                        std::optional<std::pair<double, double>> window) {
    if (!(nu > 0.0)) throw std::invalid_argument("weighted_cf_integral: nu must be positive");
    WeightedCfIntegral out;
    Eigen::ArrayXd integrand(f.size());
    for (Eigen::Index m = 0; m < f.size(); ++m) integrand[m] = std::pow(std::abs(f.values[m]), nu) * std::abs(f.t(m));
    out.grid_part = (integrand.sum() - 0.5 * (integrand[0] + integrand[f.size() - 1])) * f.dt;
    out.exponent = decay_exponent(f, window.value_or(default_decay_window(f)));
    out.finite = nu * out.exponent > 2.0;
    if (!out.finite) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    double tail = 0.0;
    if (std::isfinite(out.exponent)) {
        // envelope C t^{-eps} fitted at the grid edge, integrated to infinity on both sides
        const Eigen::Index band = std::max<Eigen::Index>(8, f.size() / 40);
        const double envelope = f.values.tail(band).abs().maxCoeff();
        tail = 2.0 * std::pow(envelope, nu) * f.tmax * f.tmax / (nu * out.exponent - 2.0);
    }
    out.value = out.grid_part + tail;
    return out;
}

// ---- CSV --------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> read_numeric_csv(std::istream& in, const std::string& header, std::size_t columns) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("CSV input is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw std::invalid_argument("CSV header must be '" + header + "'");
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != columns) throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": wrong column count");
        rows.push_back(std::move(row));
    }
    if (rows.size() < 3) throw std::invalid_argument("CSV needs at least 3 rows");
    return rows;
}

double uniform_spacing(const std::vector<std::vector<double>>& rows) {
    const double step = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::abs(rows[i][0] - rows[i - 1][0] - step) > 1e-9 * std::abs(step)) {
            throw std::invalid_argument("CSV abscissae must be uniformly spaced");
        }
    }
    if (!(step > 0.0)) throw std::invalid_argument("CSV abscissae must increase");
    return step;
}

}  // namespace

void write_density_csv(std::ostream& out, const GridDensity& p) {
    out << "x,p\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < p.size(); ++i) out << p.x(i) << ',' << p.values[i] << '\n';
}

GridDensity read_density_csv(std::istream& in) {
    const auto rows = read_numeric_csv(in, "x,p", 2);
    GridDensity p;
    p.x0 = rows.front()[0];
    p.dx = uniform_spacing(rows);
    p.values.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][1] < 0.0) throw std::invalid_argument("CSV density values must be nonnegative");
        p.values[static_cast<Eigen::Index>(i)] = rows[i][1];
    }
    return p;
}

void write_cf_csv(std::ostream& out, const CharFunctionGrid& f) {
    out << "t,re,im\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index m = 0; m < f.size(); ++m) out << f.t(m) << ',' << f.values[m].real() << ',' << f.values[m].imag() << '\n';
}

CharFunctionGrid read_cf_csv(std::istream& in) {
    const auto rows = read_numeric_csv(in, "t,re,im", 3);
    CharFunctionGrid f;
    f.dt = uniform_spacing(rows);
    f.tmax = -rows.front()[0];
    if (std::abs(rows.back()[0] - f.tmax) > 1e-9 * f.tmax) throw std::invalid_argument("cf CSV grid must be symmetric");
    f.values.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) f.values[static_cast<Eigen::Index>(i)] = cd(rows[i][1], rows[i][2]);
    return f;
}

}  // namespace fisherclt
