#pragma once

// Dense polynomials over an arbitrary scalar field, probabilists' Hermite
// polynomials, and closed-form integration of P(x) against the standard
// normal density. With Scalar = Rational every operation is exact.

#include "fisherclt/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fisherclt {

template <class Scalar>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

    static Poly constant(const Scalar& c) { return Poly(std::vector<Scalar>{c}); }
    static Poly monomial(int degree, const Scalar& c = Scalar(1)) {
        std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
        v.back() = c;
        return Poly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^k; zero beyond the degree.
    Scalar coeff(int k) const {
        if (k < 0 || k > degree()) return Scalar(0);
        return coeffs_[static_cast<std::size_t>(k)];
    }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    template <class X>
    X operator()(const X& x) const {
        X acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + static_cast<X>(*it);
        }
        return acc;
    }

    Poly& operator+=(const Poly& other) {
        if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Scalar(0));
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& other) {
        if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Scalar(0));
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Scalar& c) {
        if (c == Scalar(0)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& a : coeffs_) a *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Scalar(-1); }
    friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
    friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == Scalar(0)) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& other) { return *this = *this * other; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    template <class Other>
    Poly<Other> cast() const {
        std::vector<Other> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(convert<Other>(c));
        return Poly<Other>(std::move(out));
    }

private:
    template <class Other, class From>
    static Other convert(const From& c) {
        if constexpr (std::is_same_v<Other, double>) {
            return to_double(c);
        } else {
            return Other(c);
        }
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

template <class Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
    if (p.degree() < 1) return Poly<Scalar>();
    std::vector<Scalar> out(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) out[static_cast<std::size_t>(k - 1)] = p.coeff(k) * Scalar(k);
    return Poly<Scalar>(std::move(out));
}

/// x * P(x)
template <class Scalar>
Poly<Scalar> times_x(const Poly<Scalar>& p) {
    if (p.is_zero()) return p;
    std::vector<Scalar> out;
    out.reserve(p.coeffs().size() + 1);
    out.push_back(Scalar(0));
    out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
    return Poly<Scalar>(std::move(out));
}

/// Chebyshev-Hermite (probabilists') polynomial He_k with leading coefficient 1:
/// He_{k+1} = x He_k - k He_{k-1}.
template <class Scalar>
Poly<Scalar> hermite_poly(int k) {
    if (k < 0) throw std::invalid_argument("hermite_poly: negative degree");
    Poly<Scalar> prev = Poly<Scalar>::constant(Scalar(1));
    if (k == 0) return prev;
    Poly<Scalar> cur = Poly<Scalar>::monomial(1);
    for (int m = 1; m < k; ++m) {
        Poly<Scalar> next = times_x(cur) - prev * Scalar(m);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// He_0 .. He_kmax in one pass.
template <class Scalar>
std::vector<Poly<Scalar>> hermite_table(int kmax) {
    std::vector<Poly<Scalar>> table;
    table.reserve(static_cast<std::size_t>(std::max(kmax, 0)) + 1);
    table.push_back(Poly<Scalar>::constant(Scalar(1)));
    if (kmax >= 1) table.push_back(Poly<Scalar>::monomial(1));
    for (int m = 1; m < kmax; ++m) {
        table.push_back(times_x(table[m]) - table[m - 1] * Scalar(m));
    }
    return table;
}

/// E[Z^n] for standard normal Z: 0 for odd n, (n-1)!! otherwise.
template <class Scalar>
Scalar gaussian_moment(int n) {
    if (n < 0) throw std::invalid_argument("gaussian_moment: negative order");
    if (n % 2 == 1) return Scalar(0);
    Scalar m(1);
    for (int k = n - 1; k > 1; k -= 2) m *= Scalar(k);
    return m;
}

/// Integral of P(x) phi(x) over the real line.
template <class Scalar>
Scalar integrate_against_gaussian(const Poly<Scalar>& p) {
    Scalar total(0);
    Scalar moment(1);  // running (n-1)!! for even n
    for (int n = 0; n <= p.degree(); n += 2) {
        if (n > 0) moment *= Scalar(n - 1);
        total += p.coeff(n) * moment;
    }
    return total;
}

}  // namespace fisherclt
