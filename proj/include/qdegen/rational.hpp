#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace qdegen {

using Rational = boost::rational<std::int64_t>;

inline bool is_integer(const Rational& x) { return x.denominator() == 1; }

inline double to_double(const Rational& x) {
    return boost::rational_cast<double>(x);
}

inline std::int64_t floor(const Rational& x) {
    std::int64_t n = x.numerator(), d = x.denominator();
    std::int64_t f = n / d;
    if ((n % d != 0) && (n < 0)) --f;
    return f;
}

/// Integer value; throws if x is not integral.
inline std::int64_t to_integer(const Rational& x) {
    if (!is_integer(x))
        throw InvalidParameter("expected an integer, got non-integral rational");
    return x.numerator();
}

/// Parity of an integer rational (0 or 1).
inline int parity(const Rational& x) {
    auto n = to_integer(x) % 2;
    return static_cast<int>(n < 0 ? n + 2 : n);
}

inline std::string to_string(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw InvalidParameter("malformed rational: '" + std::string(whole) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw InvalidParameter("malformed rational: '" + std::string(whole) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9')
            throw InvalidParameter("malformed rational: '" + std::string(whole) + "'");
        if (v > (INT64_MAX - (c - '0')) / 10)
            throw InvalidParameter("rational out of range: '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal literal such as "-0.37" exactly.
inline Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = detail::parse_int(text.substr(0, slash), text);
        auto den = detail::parse_int(text.substr(slash + 1), text);
        if (den == 0) throw InvalidParameter("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto int_part = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 15 || frac[0] == '-' || frac[0] == '+')
            throw InvalidParameter("malformed rational: '" + std::string(text) + "'");
        bool neg = !int_part.empty() && int_part[0] == '-';
        std::int64_t whole = 0;
        if (!int_part.empty() && int_part != "-" && int_part != "+")
            whole = detail::parse_int(int_part, text);
        std::int64_t scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        std::int64_t f = detail::parse_int(frac, text);
        Rational r(whole < 0 ? -whole : whole);
        r += Rational(f, scale);
        return neg ? -r : r;
    }
    return Rational(detail::parse_int(text, text));
}

}  // namespace qdegen
