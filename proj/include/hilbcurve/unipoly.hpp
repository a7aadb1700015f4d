#pragma once

#include "hilbcurve/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hilb {

// Dense univariate polynomial over Q in one variable z. Coefficients are
// trimmed so the leading one is nonzero; the zero polynomial has an empty
// coefficient list and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Rational& constant) {
        if (constant != 0) c_.push_back(constant);
    }
    UniPoly(long long constant) : UniPoly(Rational(constant)) {}

    static UniPoly from_coeffs(std::vector<Rational> coeffs) {
        UniPoly p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static UniPoly monomial(int k, const Rational& a) {
        UniPoly p;
        if (a != 0) {
            p.c_.assign(static_cast<size_t>(k) + 1, Rational(0));
            p.c_[static_cast<size_t>(k)] = a;
        }
        return p;
    }

    // z + shift
    static UniPoly linear(const Rational& shift) { return from_coeffs({shift, Rational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& operator[](int k) const {
        static const Rational zero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(k)];
    }

    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

    const std::vector<Rational>& coeffs() const { return c_; }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rational> s(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) s[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) s[i] += o.c_[i];
        return from_coeffs(std::move(s));
    }

    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rational> s(c_.size() + o.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) s[i + j] += c_[i] * o.c_[j];
        return from_coeffs(std::move(s));
    }

    UniPoly operator*(const Rational& a) const {
        if (a == 0) return UniPoly();
        UniPoly r = *this;
        for (auto& x : r.c_) x *= a;
        return r;
    }
    UniPoly operator*(long long a) const { return *this * Rational(a); }

    Rational eval(const Rational& z) const {
        Rational v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
        return v;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(Int(i));
        return from_coeffs(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * (1 / lead());
    }

    // Polynomial division: *this = q*b + r with deg r < deg b. Exact over Q.
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& quo, UniPoly& rem) {
        if (b.is_zero()) throw std::invalid_argument("UniPoly division by zero");
        std::vector<Rational> r = a.c_;
        std::vector<Rational> q;
        int db = b.degree();
        if (a.degree() >= db) q.assign(static_cast<size_t>(a.degree() - db) + 1, Rational(0));
        const Rational lb = b.lead();
        for (int k = a.degree() - db; k >= 0; --k) {
            Rational f = r[static_cast<size_t>(k + db)] / lb;
            if (f == 0) continue;
            q[static_cast<size_t>(k)] = f;
            for (int i = 0; i <= db; ++i) r[static_cast<size_t>(k + i)] -= f * b[i];
        }
        quo = from_coeffs(std::move(q));
        rem = from_coeffs(std::move(r));
    }

    // Division by (z - root); the remainder must vanish.
    UniPoly deflate(const Rational& root) const {
        UniPoly q, r;
        divmod(*this, from_coeffs({-root, Rational(1)}), q, r);
        if (!r.is_zero()) throw std::invalid_argument("deflate: not a root");
        return q;
    }

    // Clears denominators and content: the unique integer-coefficient
    // multiple that is primitive, keeping the sign of the leading term.
    UniPoly primitive_integer() const {
        if (is_zero()) return *this;
        Int l = 1;
        for (const auto& a : c_) l = boost::multiprecision::lcm(l, denominator(a));
        std::vector<Rational> s(c_.size());
        Int g = 0;
        for (size_t i = 0; i < c_.size(); ++i) {
            s[i] = c_[i] * Rational(l);
            g = boost::multiprecision::gcd(g, numerator(s[i]));
        }
        if (g != 0)
            for (auto& a : s) a /= Rational(g);
        return from_coeffs(std::move(s));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline UniPoly operator*(const Rational& a, const UniPoly& p) { return p * a; }

// Monic gcd over Q via the Euclidean algorithm.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly q, r;
        UniPoly::divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& q) {
    if (q.degree() <= 0) return q.monic();
    UniPoly g = gcd(q, q.derivative());
    UniPoly s, r;
    UniPoly::divmod(q, g, s, r);
    return s.monic();
}

}  // namespace hilb
