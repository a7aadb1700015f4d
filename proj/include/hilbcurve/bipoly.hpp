#pragma once

#include "hilbcurve/errors.hpp"
#include "hilbcurve/rational.hpp"
#include "hilbcurve/unipoly.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hilb {

// Sparse bivariate polynomial over Q in (x, y). Canonical form: the term map
// holds no zero coefficients, so equality is structural.
class BiPoly {
public:
    using Key = std::array<int, 2>;  // {i, j} for x^i y^j

    BiPoly() = default;
    BiPoly(const Rational& constant) {
        if (constant != 0) t_[{0, 0}] = constant;
    }
    BiPoly(long long constant) : BiPoly(Rational(constant)) {}

    static BiPoly monomial(int i, int j, const Rational& a) {
        BiPoly p;
        if (a != 0) p.t_[{i, j}] = a;
        return p;
    }
    static BiPoly x() { return monomial(1, 0, 1); }
    static BiPoly y() { return monomial(0, 1, 1); }
    // a*x + b*y + c
    static BiPoly linear(const Rational& a, const Rational& b, const Rational& c) {
        BiPoly p;
        p.add_term(1, 0, a);
        p.add_term(0, 1, b);
        p.add_term(0, 0, c);
        return p;
    }

    bool is_zero() const { return t_.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [k, v] : t_) d = std::max(d, k[0] + k[1]);
        return d;
    }
    int deg_x() const {
        int d = 0;
        for (const auto& [k, v] : t_) d = std::max(d, k[0]);
        return is_zero() ? -1 : d;
    }
    int deg_y() const {
        int d = 0;
        for (const auto& [k, v] : t_) d = std::max(d, k[1]);
        return is_zero() ? -1 : d;
    }

    Rational coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? Rational(0) : it->second;
    }

    void add_term(int i, int j, const Rational& a) {
        if (a == 0) return;
        auto [it, fresh] = t_.try_emplace(Key{i, j}, a);
        if (!fresh) {
            it->second += a;
            if (it->second == 0) t_.erase(it);
        }
    }

    const std::map<Key, Rational>& terms() const { return t_; }

    bool operator==(const BiPoly& o) const { return t_ == o.t_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly operator-() const {
        BiPoly r = *this;
        for (auto& [k, v] : r.t_) v = -v;
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [k, v] : o.t_) r.add_term(k[0], k[1], v);
        return r;
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (const auto& [ka, va] : t_)
            for (const auto& [kb, vb] : o.t_) r.add_term(ka[0] + kb[0], ka[1] + kb[1], va * vb);
        return r;
    }
    BiPoly operator*(const Rational& a) const {
        BiPoly r;
        if (a == 0) return r;
        r.t_ = t_;
        for (auto& [k, v] : r.t_) v *= a;
        return r;
    }
    BiPoly operator*(long long a) const { return *this * Rational(a); }

    BiPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("BiPoly::pow: negative exponent");
        BiPoly r(1), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Rational eval(const Rational& x0, const Rational& y0) const {
        // Horner in y with Horner-in-x coefficients would be fancier than the
        // term counts here justify.
        Rational v = 0;
        for (const auto& [k, c] : t_) v += c * pow_int(x0, k[0]) * pow_int(y0, k[1]);
        return v;
    }

private:
    std::map<Key, Rational> t_;
};

inline BiPoly operator*(const Rational& a, const BiPoly& p) { return p * a; }

// p(m11*x + m12*y + s1, m21*x + m22*y + s2), expanded and canonical.
inline BiPoly substitute_affine(const BiPoly& p, const Rational& m11, const Rational& m12,
                                const Rational& m21, const Rational& m22, const Rational& s1,
                                const Rational& s2) {
    const BiPoly u = BiPoly::linear(m11, m12, s1);
    const BiPoly v = BiPoly::linear(m21, m22, s2);
    // Cache powers up to the needed degree.
    std::vector<BiPoly> pu{BiPoly(1)}, pv{BiPoly(1)};
    for (int i = 1; i <= std::max(p.deg_x(), 0); ++i) pu.push_back(pu.back() * u);
    for (int j = 1; j <= std::max(p.deg_y(), 0); ++j) pv.push_back(pv.back() * v);
    BiPoly r;
    for (const auto& [k, c] : p.terms()) r = r + pu[static_cast<size_t>(k[0])] * pv[static_cast<size_t>(k[1])] * c;
    return r;
}

// The degree-n homogeneous part of p, i.e. p0(x,y,0) for the projective
// closure of a degree-n curve.
inline BiPoly top_form(const BiPoly& p, int n) {
    if (p.degree() > n) throw std::invalid_argument("top_form: polynomial degree exceeds n");
    BiPoly r;
    for (const auto& [k, c] : p.terms())
        if (k[0] + k[1] == n) r.add_term(k[0], k[1], c);
    return r;
}

// q(r*y - iota*x) expanded.
inline BiPoly compose_line(const UniPoly& q, int r, int iota) {
    const BiPoly z = BiPoly::linear(Rational(-iota), Rational(r), 0);
    BiPoly acc, zk(1);
    for (int k = 0; k <= q.degree(); ++k) {
        acc = acc + zk * q[k];
        if (k < q.degree()) zk = zk * z;
    }
    return acc;
}

// Inverse of compose_line where it exists: recovers q with p = q(r*y - iota*x).
// Throws RankTwoError when p genuinely involves both classes.
inline UniPoly restrict_to_line(const BiPoly& p, int r, int iota) {
    if (r <= 0 || iota <= 0) throw std::invalid_argument("restrict_to_line: r and iota must be positive");
    // Along x = 0 the line parameter is z = r*y, so q is pinned by p(0, y).
    std::vector<Rational> qc(static_cast<size_t>(std::max(p.deg_y(), 0)) + 1, Rational(0));
    for (const auto& [k, c] : p.terms())
        if (k[0] == 0) qc[static_cast<size_t>(k[1])] = c / pow_int(Rational(r), k[1]);
    UniPoly q = UniPoly::from_coeffs(std::move(qc));
    if (compose_line(q, r, iota) != p)
        throw RankTwoError("restrict_to_line: p is not a polynomial in r*y - iota*x");
    return q;
}

// Exact division by a*x + b*y + c. Returns false (and leaves quo empty) when
// the division has a remainder.
inline bool divide_linear(const BiPoly& p, const Rational& a, const Rational& b, const Rational& c,
                          BiPoly& quo) {
    quo = BiPoly();
    if (a == 0 && b == 0) throw std::invalid_argument("divide_linear: divisor is constant");
    if (p.is_zero()) return true;
    BiPoly rem = p;
    BiPoly divisor = BiPoly::linear(a, b, c);
    BiPoly q;
    if (b != 0) {
        // Long division in y over Q[x].
        while (!rem.is_zero() && rem.deg_y() >= 1) {
            int dy = rem.deg_y();
            BiPoly lead;  // coefficient of y^dy, as a polynomial in x
            for (const auto& [k, v] : rem.terms())
                if (k[1] == dy) lead.add_term(k[0], dy - 1, v / b);
            q = q + lead;
            rem = rem - lead * divisor;
        }
        // Remainder has y-degree 0; it must be exactly zero.
        if (!rem.is_zero()) return false;
    } else {
        while (!rem.is_zero() && rem.deg_x() >= 1) {
            int dx = rem.deg_x();
            BiPoly lead;
            for (const auto& [k, v] : rem.terms())
                if (k[0] == dx) lead.add_term(dx - 1, k[1], v / a);
            q = q + lead;
            rem = rem - lead * divisor;
        }
        if (!rem.is_zero()) return false;
    }
    quo = q;
    return true;
}

}  // namespace hilb
