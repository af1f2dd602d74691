#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>

#include "towercert/errors.hpp"

namespace towercert {

using Integer = boost::multiprecision::cpp_int;
// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return numerator(r); }
inline Integer den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Exact square root of a nonnegative integer, if it is a perfect square.
inline std::optional<Integer> integer_sqrt_exact(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Positive square root of r in Q, if one exists.  A reduced fraction p/q is a
// square iff p and q are both perfect squares.
inline std::optional<Rational> rational_sqrt_exact(const Rational& r) {
    if (r < 0) return std::nullopt;
    auto p = integer_sqrt_exact(num(r));
    auto q = integer_sqrt_exact(den(r));
    if (p && q) return Rational(*p, *q);
    return std::nullopt;
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Accepts "n" or "n/d" with an optional leading sign.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw SyntaxError("empty rational literal", 0);
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = (s[i] == '-'); ++i; }
    auto digits = [&](const char* what) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw SyntaxError(std::string("expected ") + what, start);
        return Integer(s.substr(start, i - start));
    };
    Integer n = digits("numerator digits");
    Integer d = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        d = digits("denominator digits");
        if (d == 0) throw DivisionByZero("rational literal with zero denominator: " + s);
    }
    if (i != s.size()) throw SyntaxError("trailing characters in rational literal", i);
    Rational r(n, d);
    return neg ? Rational(-r) : r;
}

} // namespace towercert
