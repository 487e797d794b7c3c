#include "fisherclt/rational.hpp"

#include <cctype>

namespace fisherclt {

namespace {

BigInt parse_integer(const std::string& digits, const std::string& original) {
    if (digits.empty()) throw std::invalid_argument("parse_rational: malformed number '" + original + "'");
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("parse_rational: malformed number '" + original + "'");
        }
    }
    return BigInt(digits);
}

Rational pow10(int e) {
    BigInt p(1);
    for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= 10;
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    }
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");

    if (auto slash = text.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + raw + "'");
        return num / den;
    }

    bool negative = false;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    int exponent = 0;
    std::string mantissa = text.substr(pos);
    if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
        exponent = std::stoi(mantissa.substr(e + 1));
        mantissa = mantissa.substr(0, e);
    }
    std::string int_part = mantissa;
    std::string frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
        throw std::invalid_argument("parse_rational: malformed number '" + raw + "'");
    }
    const BigInt whole = parse_integer(int_part + frac_part, raw);
    Rational q(whole);
    q *= pow10(exponent - static_cast<int>(frac_part.size()));
    return negative ? Rational(-q) : q;
}

}  // namespace fisherclt
