#pragma once

#include "hilbcurve/bipoly.hpp"
#include "hilbcurve/fanocore.hpp"
#include "hilbcurve/rational.hpp"
#include "hilbcurve/roots.hpp"
#include "hilbcurve/unipoly.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace hilb {

inline std::string latex_rational(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    std::string sign = q < 0 ? "-" : "";
    return sign + "\\frac{" + Int(boost::multiprecision::abs(numerator(q))).str() + "}{" +
           denominator(q).str() + "}";
}

namespace render_detail {

inline void append_monomial(std::ostringstream& os, int i, int j, const char* vx, const char* vy,
                            bool latex) {
    auto pow_piece = [&](const char* v, int e) {
        if (e == 0) return std::string();
        std::string s = v;
        if (e > 1) s += latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
        return s;
    };
    std::string px = pow_piece(vx, i), py = pow_piece(vy, j);
    if (!px.empty()) os << px;
    if (!px.empty() && !py.empty()) os << (latex ? " " : "*");
    if (!py.empty()) os << py;
}

}  // namespace render_detail

// Terms in descending lexicographic (i, j) order, the canonical interchange
// order.
inline std::string poly_string(const BiPoly& p, bool latex, const char* vx = "x",
                               const char* vy = "y") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [k, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        const bool is_const = k[0] == 0 && k[1] == 0;
        if (a != 1 || is_const) {
            os << (latex ? latex_rational(a) : to_string(a));
            if (!is_const) os << (latex ? "\\," : "*");
        }
        render_detail::append_monomial(os, k[0], k[1], vx, vy, latex);
        first = false;
    }
    return os.str();
}

inline std::string poly_text(const BiPoly& p) { return poly_string(p, false); }
inline std::string poly_latex(const BiPoly& p) { return poly_string(p, true); }

inline std::string unipoly_string(const UniPoly& q, bool latex, const char* var = "z") {
    if (q.is_zero()) return "0";
    std::string v = var;
    if (v.size() > 1) v = latex ? "\\left(" + v + "\\right)" : "(" + v + ")";
    std::ostringstream os;
    bool first = true;
    for (int k = q.degree(); k >= 0; --k) {
        Rational a = q[k];
        if (a == 0) continue;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1 || k == 0) {
            os << (latex ? latex_rational(a) : to_string(a));
            if (k > 0) os << (latex ? "\\," : "*");
        }
        if (k > 0) {
            os << v;
            if (k > 1) os << (latex ? "^{" + std::to_string(k) + "}" : "^" + std::to_string(k));
        }
        first = false;
    }
    return os.str();
}

// q = lead * prod (var + c)^m * cofactor, with the linear factors sorted by
// constant term.
struct FactoredForm {
    Rational lead = 1;
    std::vector<std::pair<Rational, int>> linear;
    UniPoly cofactor;  // monic, no rational roots (constant 1 when fully split)
};

inline FactoredForm factor_q(const UniPoly& q) {
    FactoredForm f;
    RationalRoots rr = rational_roots(q);
    f.lead = q.lead();
    for (const auto& [root, m] : rr.roots) f.linear.emplace_back(-root, m);
    std::sort(f.linear.begin(), f.linear.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    f.cofactor = rr.cofactor;
    return f;
}

inline std::string factored_string(const FactoredForm& f, bool latex, const std::string& var) {
    std::ostringstream os;
    auto wrap = [&](const std::string& inner) {
        return latex ? "\\left(" + inner + "\\right)" : "(" + inner + ")";
    };
    bool printed = false;
    if (f.lead != 1 || (f.linear.empty() && f.cofactor.degree() < 1)) {
        os << (latex ? latex_rational(f.lead) : to_string(f.lead));
        printed = true;
    }
    for (const auto& [c, m] : f.linear) {
        if (printed) os << (latex ? "" : "*");
        std::string inner = var;
        if (c > 0) inner += (latex ? " + " : " + ") + (latex ? latex_rational(c) : to_string(c));
        if (c < 0) inner += (latex ? " - " : " - ") + (latex ? latex_rational(-c) : to_string(-c));
        os << wrap(inner);
        if (m > 1) os << (latex ? "^{" + std::to_string(m) + "}" : "^" + std::to_string(m));
        printed = true;
    }
    if (f.cofactor.degree() >= 1) {
        if (printed) os << (latex ? "" : "*");
        os << wrap(unipoly_string(f.cofactor, latex, var.c_str()));
    }
    return os.str();
}

// q factored, printed in the variable z = r*y - iota*x.
inline std::string factored_q_string(const FactoredHC& hc, bool latex) {
    FactoredForm f = factor_q(hc.q());
    std::string s = factored_string(f, latex, "z");
    std::ostringstream os;
    os << s << (latex ? ",\\quad z = " : ",  z = ");
    std::ostringstream zdef;
    if (hc.r != 1) zdef << hc.r << (latex ? "y" : "*y");
    else zdef << "y";
    zdef << " - ";
    if (hc.iota != 1) zdef << hc.iota << (latex ? "x" : "*x");
    else zdef << "x";
    os << zdef.str();
    return os.str();
}

// The centered form p(1/2 + u, v) = lead * r^n * prod(w + c')^m * ...,
// written in w = v - (iota/r) u.
inline std::string centered_q_string(const FactoredHC& hc, bool latex) {
    // z = r*w - iota/2 with w = v - (iota/r)u, so q(z) = q_c(w).
    UniPoly qc;
    {
        const UniPoly q = hc.q();
        UniPoly acc;
        UniPoly lin = UniPoly::from_coeffs({Rational(-hc.iota) / 2, Rational(hc.r)});
        UniPoly power(Rational(1));
        for (int k = 0; k <= q.degree(); ++k) {
            acc = acc + power * q[k];
            if (k < q.degree()) power = power * lin;
        }
        qc = acc;
    }
    std::ostringstream w;
    w << "v";
    Rational slope = Rational(hc.iota) / hc.r;
    w << " - ";
    if (slope != 1) w << (latex ? latex_rational(slope) : to_string(slope));
    w << "u";
    return factored_string(factor_q(qc), latex, w.str());
}

}  // namespace hilb
