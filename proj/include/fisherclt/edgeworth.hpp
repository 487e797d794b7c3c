#pragma once

// Edgeworth correction terms as polynomial-times-Gaussian objects.
//
// Only the polynomial factor P of x -> P(x) phi(x) is stored, so sums,
// products and derivatives stay exact; phi is applied in floating point at
// evaluation time.

#include "fisherclt/cumulants.hpp"
#include "fisherclt/gauss_poly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fisherclt {

inline double std_normal_pdf(double x) { return 0.398942280401432677939946059934 * std::exp(-0.5 * x * x); }
inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

template <class Scalar>
struct HermiteGaussFunction {
    Poly<Scalar> P;

    double operator()(double x) const { return P.template cast<double>()(x) * std_normal_pdf(x); }
    bool is_zero() const { return P.is_zero(); }

    friend HermiteGaussFunction operator+(const HermiteGaussFunction& a, const HermiteGaussFunction& b) {
        return {a.P + b.P};
    }
    friend HermiteGaussFunction operator*(const Scalar& c, const HermiteGaussFunction& f) { return {f.P * c}; }
    friend bool operator==(const HermiteGaussFunction& a, const HermiteGaussFunction& b) { return a.P == b.P; }
};

/// d/dx (P phi) = (P' - x P) phi
template <class Scalar>
HermiteGaussFunction<Scalar> differentiate(const HermiteGaussFunction<Scalar>& f) {
    return {derivative(f.P) - times_x(f.P)};
}

namespace detail {

/// prod_l (gamma_{l+2} / (l+2)!)^{r_l} / r_l!
template <class Scalar>
Scalar solution_weight(const CumulantVector<Scalar>& c, const IndexSolution& sol) {
    Scalar w(1);
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
        const int rl = sol.r[i];
        if (rl == 0) continue;
        const int order = static_cast<int>(i) + 3;
        const Scalar base = c(order) / factorial<Scalar>(order);
        w *= power(base, rl) / factorial<Scalar>(rl);
    }
    return w;
}

template <class Scalar>
void check_correction_index(const CumulantVector<Scalar>& c, int k) {
    if (k < 1 || k > c.order() - 2) {
        throw std::invalid_argument("Edgeworth term q_" + std::to_string(k) + " needs 1 <= k <= s - 2 (s = " +
                                    std::to_string(c.order()) + ")");
    }
}

}  // namespace detail

/// q_k = phi * sum over index_solutions(k) of H_{k+2j} * weight.
template <class Scalar>
HermiteGaussFunction<Scalar> build_qk(const CumulantVector<Scalar>& c, int k) {
    detail::check_correction_index(c, k);
    const auto hermite = hermite_table<Scalar>(3 * k);
    Poly<Scalar> P;
    for (const auto& sol : index_solutions(k)) {
        P += hermite[static_cast<std::size_t>(k + 2 * sol.j)] * detail::solution_weight(c, sol);
    }
    return {P};
}

/// q_k' + x q_k = phi * sum (k + 2l) H_{k+2l-1} * weight, with l = r_1 + ... + r_k.
template <class Scalar>
HermiteGaussFunction<Scalar> build_q_score(const CumulantVector<Scalar>& c, int k) {
    detail::check_correction_index(c, k);
    const auto hermite = hermite_table<Scalar>(3 * k);
    Poly<Scalar> P;
    for (const auto& sol : index_solutions(k)) {
        const int m = k + 2 * sol.j;
        P += hermite[static_cast<std::size_t>(m - 1)] * (Scalar(m) * detail::solution_weight(c, sol));
    }
    return {P};
}

/// Distribution-function correction, Q_k' = q_k.
template <class Scalar>
HermiteGaussFunction<Scalar> build_Qk(const CumulantVector<Scalar>& c, int k) {
    detail::check_correction_index(c, k);
    const auto hermite = hermite_table<Scalar>(3 * k);
    Poly<Scalar> P;
    for (const auto& sol : index_solutions(k)) {
        P -= hermite[static_cast<std::size_t>(k + 2 * sol.j - 1)] * detail::solution_weight(c, sol);
    }
    return {P};
}

inline constexpr int kMaxModelOrder = 10;

template <class Scalar>
struct EdgeworthModel {
    int s = 2;
    CumulantVector<Scalar> cumulants;
    std::vector<HermiteGaussFunction<Scalar>> qk;  // q_1 .. q_{s-2}
    std::vector<HermiteGaussFunction<Scalar>> Qk;  // Q_1 .. Q_{s-2}
};

/// Builds q_1..q_{s-2}. Orders above kMaxModelOrder are rejected: the
/// factorial growth of the coefficients ruins floating-point evaluation at large |x|.
template <class Scalar>
EdgeworthModel<Scalar> make_edgeworth_model(const CumulantVector<Scalar>& c, int s) {
    if (s < 2 || s > c.order()) throw std::invalid_argument("make_edgeworth_model: need 2 <= s <= cumulant order");
    if (s > kMaxModelOrder) {
        throw std::invalid_argument("make_edgeworth_model: s > " + std::to_string(kMaxModelOrder) + " not supported");
    }
    EdgeworthModel<Scalar> model{s, c.truncated(s), {}, {}};
    for (int k = 1; k <= s - 2; ++k) {
        model.qk.push_back(build_qk(model.cumulants, k));
        model.Qk.push_back(build_Qk(model.cumulants, k));
    }
    return model;
}

/// phi_s(x) = phi(x) + sum_k q_k(x) n^{-k/2}
template <class Scalar>
double phi_s_eval(const EdgeworthModel<Scalar>& model, int n, double x) {
    if (n < 1) throw std::invalid_argument("phi_s_eval: n must be at least 1");
    double total = std_normal_pdf(x);
    for (std::size_t k = 0; k < model.qk.size(); ++k) {
        total += model.qk[k](x) * std::pow(static_cast<double>(n), -0.5 * static_cast<double>(k + 1));
    }
    return total;
}

/// Phi_s(x) = Phi(x) + sum_k Q_k(x) n^{-k/2}
template <class Scalar>
double Phi_s_eval(const EdgeworthModel<Scalar>& model, int n, double x) {
    if (n < 1) throw std::invalid_argument("Phi_s_eval: n must be at least 1");
    double total = std_normal_cdf(x);
    for (std::size_t k = 0; k < model.Qk.size(); ++k) {
        total += model.Qk[k](x) * std::pow(static_cast<double>(n), -0.5 * static_cast<double>(k + 1));
    }
    return total;
}

/// u_s = (phi_s - phi) / phi as a polynomial, and w_s = sum (q_k' + x q_k) n^{-k/2}.
struct EdgeworthUW {
    Poly<double> u;
    HermiteGaussFunction<double> w;
};

template <class Scalar>
EdgeworthUW build_u_w(const EdgeworthModel<Scalar>& model, int n) {
    if (n < 1) throw std::invalid_argument("build_u_w: n must be at least 1");
    EdgeworthUW out;
    for (int k = 1; k <= model.s - 2; ++k) {
        const double scale = std::pow(static_cast<double>(n), -0.5 * k);
        out.u += model.qk[static_cast<std::size_t>(k - 1)].P.template cast<double>() * scale;
        out.w.P += build_q_score(model.cumulants, k).P.template cast<double>() * scale;
    }
    return out;
}

}  // namespace fisherclt
