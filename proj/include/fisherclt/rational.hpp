#pragma once

// Exact rational scalar and the small set of helpers the scalar-generic
// templates need (conversion to double, exact square roots, parsing).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace fisherclt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline std::string numerator_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str();
}
inline std::string denominator_string(const Rational& q) {
    return boost::multiprecision::denominator(q).str();
}

// Every finite double is a dyadic rational; this recovers it exactly.
inline Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    // mant * 2^53 is an integer for IEEE doubles
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational q{BigInt(scaled)};
    exp -= 53;
    if (exp > 0) {
        q *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        q /= Rational(BigInt(1) << (-exp));
    }
    return q;
}

// Parses "3", "-7/12", "0.45", "1e-3" into an exact rational.
Rational parse_rational(const std::string& text);

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

// Square root of a rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    auto num = exact_isqrt(boost::multiprecision::numerator(q));
    auto den = exact_isqrt(boost::multiprecision::denominator(q));
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

template <class Scalar>
Scalar factorial(int n) {
    Scalar f(1);
    for (int i = 2; i <= n; ++i) f *= Scalar(i);
    return f;
}

template <class Scalar>
Scalar power(Scalar base, int exponent) {
    Scalar result(1);
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace fisherclt
