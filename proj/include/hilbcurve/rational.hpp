#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hilb {

// Exact arithmetic scalars. Rational is always reduced with positive
// denominator; no operation ever rounds.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return numerator(q); }
inline Int den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Int to_int(const Rational& q) {
    if (!is_integer(q)) throw std::invalid_argument("to_int: " + q.str() + " is not an integer");
    return numerator(q);
}

// Rational from a possibly unnormalized pair: sign moves to the numerator,
// zero denominators are rejected.
inline Rational make_rational(Int n, Int d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(n, d);
}

inline Rational rat(long long n, long long d = 1) { return make_rational(Int(n), Int(d)); }

// floor(q) as an integer, exact for any sign.
inline Int floor_rat(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int quo = n / d, rem = n % d;
    if (rem != 0 && n < 0) --quo;
    return quo;
}

inline Int ceil_rat(const Rational& q) { return -floor_rat(-q); }

inline Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Product-form binomial: top*(top-1)*...*(top-k+1)/k!. Defined for any
// rational top (this is the convention Hilbert polynomials live in; for
// integer top >= 0 it agrees with the combinatorial value, and it does NOT
// vanish for negative top).
inline Rational binom(const Rational& top, int k) {
    if (k < 0) return 0;
    Rational p = 1;
    for (int i = 0; i < k; ++i) p *= top - i;
    return p / Rational(factorial(k));
}

inline Rational pow_int(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::invalid_argument("pow_int: 0 to a negative power");
        return 1 / pow_int(base, -e);
    }
    Rational r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int pow_int(const Int& base, int e) {
    if (e < 0) throw std::invalid_argument("pow_int: negative exponent for Int");
    Int r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline long long gcd_ll(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Number of bits in |x|; 0 for x == 0. Used as a pivot-size heuristic.
inline int bit_length(const Int& x) {
    if (x == 0) return 0;
    return static_cast<int>(boost::multiprecision::msb(Int(boost::multiprecision::abs(x)))) + 1;
}

inline int bit_length(const Rational& q) { return bit_length(numerator(q)) + bit_length(denominator(q)); }

inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// If q >= 0 is the square of a rational, stores that (nonnegative) square
// root and returns true.
inline bool rational_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    Int rn, rd;
    if (!is_perfect_square(numerator(q), rn)) return false;
    if (!is_perfect_square(denominator(q), rd)) return false;
    out = Rational(rn, rd);
    return true;
}

inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace hilb
