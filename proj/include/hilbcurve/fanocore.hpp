#pragma once

#include "hilbcurve/bipoly.hpp"
#include "hilbcurve/errors.hpp"
#include "hilbcurve/linalg.hpp"
#include "hilbcurve/rational.hpp"
#include "hilbcurve/roots.hpp"
#include "hilbcurve/unipoly.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace hilb {

// Data of a Fano polarized pair (X, rH) with -K = iota*H: everything the
// interpolation of q(t) = chi(tH) needs. h0[s] = h^0(sH) for s = 0..coindex.
struct FanoInput {
    int n = 0;
    int iota = 0;
    int r = 1;
    std::vector<Int> h0;

    int coindex() const { return n + 1 - iota; }

    void validate() const {
        if (n < 2) throw std::invalid_argument("FanoInput: n must be >= 2");
        if (iota < 1 || iota > n + 1) throw std::invalid_argument("FanoInput: need 1 <= iota <= n+1");
        if (r < 1) throw std::invalid_argument("FanoInput: r must be >= 1");
        if (static_cast<int>(h0.size()) != coindex() + 1)
            throw std::invalid_argument("FanoInput: h0 must list h^0(sH) for s = 0.." +
                                        std::to_string(coindex()));
        if (h0[0] != 1) throw std::invalid_argument("FanoInput: h^0(O_X) must be 1");
        for (const auto& v : h0)
            if (v < 0) throw std::invalid_argument("FanoInput: h0 entries must be nonnegative");
    }
};

// Hilbert curve of a pair with rk<K,L> = 1, stored factored: the residual
// phi of degree c_X in z = r*y - iota*x, with the iota-1 forced linear
// factors (z+1)...(z+iota-1) carried implicitly by iota.
struct FactoredHC {
    int n = 0;
    int r = 1;
    int iota = 1;
    UniPoly phi;
    BiPoly expanded;

    // phi(z) * prod_{i=1}^{iota-1} (z + i)
    UniPoly q() const {
        UniPoly acc = phi;
        for (int i = 1; i <= iota - 1; ++i) acc = acc * UniPoly::linear(Rational(i));
        return acc;
    }
};

namespace detail {

inline Rational delta_product(int iota, int s) {
    Rational p = 1;
    for (int i = 1; i <= iota - 1; ++i) p *= s + i;
    return p;
}

inline BiPoly forced_product(int r, int iota, int count) {
    BiPoly p(1);
    for (int j = 1; j <= count; ++j) p = p * BiPoly::linear(Rational(-iota), Rational(r), Rational(j));
    return p;
}

}  // namespace detail

// Interpolates phi from the h^0 table: phi(s) = h^0(sH)/delta(s) on the
// nodes s = 0..c_X, solved through the Vandermonde system.
inline FactoredHC fano_hc(const FanoInput& in) {
    in.validate();
    const int c = in.coindex();
    std::vector<Rational> nodes(static_cast<size_t>(c) + 1);
    Vec rhs(static_cast<size_t>(c) + 1);
    for (int s = 0; s <= c; ++s) {
        nodes[static_cast<size_t>(s)] = s;
        rhs[static_cast<size_t>(s)] = Rational(in.h0[static_cast<size_t>(s)]) / detail::delta_product(in.iota, s);
    }
    SolveResult sol = solve_linear({vandermonde(nodes), rhs});
    if (sol.kind != SolveKind::Unique)
        throw std::logic_error("fano_hc: Vandermonde system was not uniquely solvable");
    FactoredHC hc;
    hc.n = in.n;
    hc.r = in.r;
    hc.iota = in.iota;
    hc.phi = UniPoly::from_coeffs(sol.solution);
    hc.expanded = compose_line(hc.q(), in.r, in.iota);
    return hc;
}

// h^0(sH) for del Pezzo (coindex 2) and Mukai (coindex 3) pairs of degree
// d = H^n, via the hyperplane-section recursion down to surfaces.
inline Int h0_low_coindex(int n, const Int& d, int s, int coindex) {
    if (coindex != 2 && coindex != 3) throw std::invalid_argument("h0_low_coindex: coindex must be 2 or 3");
    if (s < 0 || s > coindex) throw std::invalid_argument("h0_low_coindex: s out of range");
    if (d < 1) throw std::invalid_argument("h0_low_coindex: d must be >= 1");
    if (n < 2 || n + 1 - coindex < 1) throw std::invalid_argument("h0_low_coindex: invalid dimension");
    if (coindex == 2) {
        switch (s) {
            case 0: return 1;
            case 1: return n - 1 + d;
            default: return Int(n) * (n - 1) / 2 + Int(n + 1) * d;
        }
    }
    if (d % 2 != 0) throw std::invalid_argument("h0_low_coindex: Mukai degree must be even");
    // Coindex 3 bottoms out on a K3 section with h^0(tH) = t^2 d/2 + 2; the
    // hyperplane recursion then gives the values below. (They also follow
    // from Serre symmetry of the curve; the catalogued column is off by a
    // constant in each entry and fails that symmetry.)
    const Int half = d / 2;
    switch (s) {
        case 0: return 1;
        case 1: return n + half;
        case 2: return Int(n + 2) * (n - 1 + d) / 2;
        default:
            return Int(n + 1) * (n + 4) / 2 * half + Int(n + 2) * (n + 1) * n / 6 - n;
    }
}

// phi coefficients (a0, a1, a2, a3) of a Mukai pair in terms of d = H^n.
// phi is the cubic anti-symmetric about z = -(n-2)/2 (forced by Serre
// duality) through phi(0) = 1/(n-3)! and phi(1) = (n + d/2)/(n-2)!; the
// catalogued a1 = (1/n!)[(d/2+1)n^2 - (2d+1)n + 2d] misses the n(n-1) term
// and breaks that symmetry (counter-witness: LG(3,6) has h^0(H) = 14, not 13).
inline std::array<Rational, 4> mukai_coeffs(int n, const Rational& d) {
    if (n < 6) throw std::invalid_argument("mukai_coeffs: requires n >= 6");
    const Rational nf(factorial(n));
    std::array<Rational, 4> a;
    a[0] = Rational(1) / Rational(factorial(n - 3));
    a[1] = ((d / 2 + 2) * n * n - (2 * d + 2) * n + 2 * d) / nf;
    a[2] = Rational(3) * d * (n - 2) / (2 * nf);
    a[3] = d / nf;
    return a;
}

enum class FanoKind { Pn, Quadric, DelPezzo, Mukai };

// The closed forms of the high-index families. The construction is valid for
// every r >= 1 (the gcd hypotheses belong to the recognition direction, not
// to the formula). DelPezzo excludes (n,d) = (3,8) and (2,9): those pairs
// are (P^3,O(2)) and (P^2,O(3)) in disguise and belong to the Pn branch.
inline FactoredHC closed_form(FanoKind kind, int n, int r, std::optional<Int> d = std::nullopt) {
    if (n < 2) throw std::invalid_argument("closed_form: n must be >= 2");
    if (r < 1) throw std::invalid_argument("closed_form: r must be >= 1");
    FactoredHC hc;
    hc.n = n;
    hc.r = r;
    const Rational nf(factorial(n));
    switch (kind) {
        case FanoKind::Pn:
            hc.iota = n + 1;
            hc.phi = UniPoly(Rational(1) / nf);
            break;
        case FanoKind::Quadric:
            hc.iota = n;
            hc.phi = UniPoly::from_coeffs({Rational(1) / Rational(factorial(n - 1)), Rational(2) / nf});
            break;
        case FanoKind::DelPezzo: {
            if (!d) throw std::invalid_argument("closed_form: DelPezzo needs d");
            if (*d < 1) throw std::invalid_argument("closed_form: DelPezzo needs d >= 1");
            if ((n == 3 && *d == 8) || (n == 2 && *d == 9))
                throw std::invalid_argument(
                    "closed_form: (n,d) = (" + std::to_string(n) + "," + d->str() +
                    ") is the projective-space case in disguise; use the Pn family");
            const Rational dd(*d);
            hc.iota = n - 1;
            hc.phi = UniPoly::from_coeffs(
                {Rational(1) / Rational(factorial(n - 2)), (n - 1) * dd / nf, dd / nf});
            break;
        }
        case FanoKind::Mukai: {
            if (!d) throw std::invalid_argument("closed_form: Mukai needs d");
            if (*d < 1) throw std::invalid_argument("closed_form: Mukai needs d >= 1");
            auto a = mukai_coeffs(n, Rational(*d));
            hc.iota = n - 2;
            hc.phi = UniPoly::from_coeffs({a[0], a[1], a[2], a[3]});
            break;
        }
    }
    hc.expanded = compose_line(hc.q(), r, hc.iota);
    return hc;
}

// Intersection data of a polarized surface.
struct SurfaceInput {
    Int K2 = 0, KL = 0, L2 = 0, chi0 = 0;

    void validate() const {
        if (L2 <= 0) throw std::invalid_argument("SurfaceInput: L^2 must be positive");
    }
};

// The conic chi(xK + yL) of a polarized surface, expanded in (x, y).
inline BiPoly surface_hc(const SurfaceInput& in) {
    in.validate();
    // Centered: (1/2)(K^2 u^2 + 2 K.L uv + L^2 v^2 + 2 chi0 - K^2/4).
    BiPoly u = BiPoly::x(), v = BiPoly::y();
    BiPoly centered = (u * u * Rational(in.K2) + u * v * Rational(2 * in.KL) + v * v * Rational(in.L2) +
                       BiPoly(Rational(2 * in.chi0) - Rational(in.K2) / 4)) *
                      rat(1, 2);
    return substitute_affine(centered, 1, 0, 0, 1, rat(-1, 2), 0);
}

// Serre duality: p(1-x, -y) = (-1)^n p(x, y).
inline bool serre_check(const BiPoly& p, int n) {
    BiPoly lhs = substitute_affine(p, -1, 0, 0, -1, 1, 0);
    BiPoly rhs = (n % 2 == 0) ? p : -p;
    return lhs == rhs;
}

enum class ConicClass { Empty, TwoLines, DoubleLine };

inline const char* conic_class_name(ConicClass c) {
    switch (c) {
        case ConicClass::Empty: return "empty";
        case ConicClass::TwoLines: return "two-lines";
        default: return "double-line";
    }
}

// One line of the arrangement in centered (u, v) coordinates:
// v = slope*u + intercept. G components with irrational intercept carry it
// symbolically as sqrt_sign * sqrt(h)/r.
struct GeographyLine {
    std::string label;
    Rational slope;
    bool symbolic = false;
    Rational intercept;  // exact value when !symbolic
    int sqrt_sign = 0;   // +1/-1 for symbolic G components
    int multiplicity = 1;
};

struct GeographyReport {
    int n = 0;
    Int d = 0;
    int r = 1;
    Rational h;                         // (n-1)((n-1)d - 4n)/(4d)
    std::optional<Rational> sqrt_h;     // set iff h >= 0 is a square in Q
    ConicClass class_R = ConicClass::Empty;
    ConicClass class_Q = ConicClass::Empty;
    std::vector<Rational> ell_intercepts;        // v-intercept of ell_i, i = 1..n-2
    std::vector<std::pair<int, int>> overlaps;   // (i, multiplicity G adds to ell_i)
    std::vector<GeographyLine> lines;            // full arrangement of Gamma_R
};

// The line arrangement of a del Pezzo pair (iota = n-1, L = rH) over R and Q.
inline GeographyReport geography(int n, const Int& d, int r) {
    if (n < 3) throw std::invalid_argument("geography: n must be >= 3");
    if (d < 1) throw std::invalid_argument("geography: d must be >= 1");
    if (r < 1) throw std::invalid_argument("geography: r must be >= 1");
    GeographyReport rep;
    rep.n = n;
    rep.d = d;
    rep.r = r;
    rep.h = Rational(n - 1) * (Rational(n - 1) * d - 4 * n) / (4 * Rational(d));
    Rational root;
    if (rational_sqrt(rep.h, root)) rep.sqrt_h = root;

    if (rep.h < 0) {
        rep.class_R = ConicClass::Empty;
        rep.class_Q = ConicClass::Empty;
    } else if (rep.h == 0) {
        rep.class_R = ConicClass::DoubleLine;
        rep.class_Q = ConicClass::DoubleLine;
    } else {
        rep.class_R = ConicClass::TwoLines;
        rep.class_Q = rep.sqrt_h ? ConicClass::TwoLines : ConicClass::Empty;
    }

    const Rational slope = Rational(n - 1) / r;
    std::vector<int> extra(static_cast<size_t>(n - 1), 0);
    for (int i = 1; i <= n - 2; ++i)
        rep.ell_intercepts.push_back((Rational(n - 1) / 2 - i) / r);

    std::vector<GeographyLine> free_g;
    if (rep.h >= 0) {
        // G: (rv - (n-1)u)^2 = h, so the components sit at rv-(n-1)u = +-sqrt(h).
        const int g_mult = rep.h == 0 ? 2 : 1;
        const int sign_count = rep.h == 0 ? 1 : 2;
        for (int sgn = 0; sgn < sign_count; ++sgn) {
            const int s = sgn == 0 ? 1 : -1;
            bool overlapped = false;
            if (rep.sqrt_h) {
                Rational target = Rational(n - 1) / 2 - s * *rep.sqrt_h;  // candidate i
                if (is_integer(target) && target >= 1 && target <= n - 2) {
                    int i = static_cast<int>(to_int(target));
                    extra[static_cast<size_t>(i)] += g_mult;
                    rep.overlaps.emplace_back(i, g_mult);
                    overlapped = true;
                }
            }
            if (!overlapped) {
                GeographyLine gl;
                gl.label = rep.h == 0 ? "lambda" : (s > 0 ? "lambda" : "lambda'");
                gl.slope = slope;
                gl.multiplicity = g_mult;
                if (rep.sqrt_h) {
                    gl.intercept = s * *rep.sqrt_h / r;
                } else {
                    gl.symbolic = true;
                    gl.sqrt_sign = s;
                }
                free_g.push_back(gl);
            }
        }
    }
    for (int i = 1; i <= n - 2; ++i) {
        GeographyLine l;
        l.label = "ell_" + std::to_string(i);
        l.slope = slope;
        l.intercept = rep.ell_intercepts[static_cast<size_t>(i - 1)];
        l.multiplicity = 1 + extra[static_cast<size_t>(i)];
        rep.lines.push_back(l);
    }
    for (auto& gl : free_g) rep.lines.push_back(gl);
    return rep;
}

// Factorization of q over Q and the reducibility verdicts over C/R/Q.
struct ReducibilityReport {
    bool over_C = true;
    bool over_R = false;
    bool over_Q = false;
    Rational lead;                                 // leading coefficient of q
    std::vector<std::pair<Rational, int>> linear;  // (c, m) for (z + c)^m, sorted by c
    UniPoly cofactor;                              // monic, no rational roots
};

inline ReducibilityReport reducibility(const FactoredHC& hc) {
    ReducibilityReport rep;
    const UniPoly q = hc.q();
    rep.lead = q.lead();
    RationalRoots rr = rational_roots(q);
    for (const auto& [root, mult] : rr.roots) rep.linear.emplace_back(-root, mult);
    std::sort(rep.linear.begin(), rep.linear.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.cofactor = rr.cofactor;
    rep.over_Q = rr.total_multiplicity() == q.degree();
    rep.over_R = count_real_roots(q, false) == q.degree();
    rep.over_C = true;  // q is univariate in z, so p splits into lines over C
    return rep;
}

}  // namespace hilb
