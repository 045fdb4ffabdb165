#ifndef GRAPHMOM_RATIONAL_HPP
#define GRAPHMOM_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace graphmom {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or a plain decimal such as "-0.125" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
            throw std::invalid_argument("malformed rational literal '" + s + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t scale = s.size() - dot - 1;
        Integer num;
        if (num.set_str(digits, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (s.front() == '+') s.erase(s.begin());
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational pow(const Rational& base, unsigned exponent)
{
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Scalar helpers shared by the exact (Rational) and float (double) backends.

template <class Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

template <class Scalar>
inline double to_double(const Scalar& x)
{
    if constexpr (is_exact_v<Scalar>)
        return x.get_d();
    else
        return static_cast<double>(x);
}

template <class Scalar>
inline Scalar from_rational(const Rational& r)
{
    if constexpr (is_exact_v<Scalar>)
        return r;
    else
        return static_cast<Scalar>(r.get_d());
}

template <class Scalar>
inline Scalar scalar_pow(const Scalar& base, unsigned exponent)
{
    if constexpr (is_exact_v<Scalar>) {
        return pow(base, exponent);
    } else {
        Scalar r = 1;
        for (unsigned i = 0; i < exponent; ++i) r *= base;
        return r;
    }
}

template <class Scalar>
inline Scalar scalar_abs(const Scalar& x)
{
    if constexpr (is_exact_v<Scalar>)
        return abs(x);
    else
        return std::abs(x);
}

template <class Scalar>
inline bool is_zero(const Scalar& x)
{
    if constexpr (is_exact_v<Scalar>)
        return sgn(x) == 0;
    else
        return x == 0;
}

template <class Scalar>
inline std::string format_scalar(const Scalar& x)
{
    if constexpr (is_exact_v<Scalar>) {
        return to_string(x);
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
        return buf;
    }
}

} // namespace graphmom

#endif // GRAPHMOM_RATIONAL_HPP
