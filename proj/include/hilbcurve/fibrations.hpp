#pragma once

#include "hilbcurve/bipoly.hpp"
#include "hilbcurve/errors.hpp"
#include "hilbcurve/fanocore.hpp"
#include "hilbcurve/linalg.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace hilb {

struct PointConstraint {
    Rational x, y, value;
};

// Optional base-chain shape: the functional equation compares R at the
// linear image (m11*x + m12*y, m21*x + m22*y) and at that image shifted by
// (v1, v2).
struct PreMap {
    Rational m11, m12, m21, m22;
    Rational v1, v2;
};

// A chi-additivity functional equation for an unknown polynomial R of the
// given total degree:
//   R(x, y) - R(x - dx, y - dy) = scale * source(x, y)
// or, with pre_map,
//   R(M(x,y)) - R(M(x,y) + v) = scale * source(x, y),
// together with point constraints and an optional Serre-symmetry condition
// R(1-x, -y) = (-1)^serre_parity * R(x, y). Which point values pin the
// solution varies by family, so they are the caller's responsibility.
struct RecurrenceSpec {
    int degree = 0;
    Rational dx = 0, dy = 0;
    Rational scale = 1;
    BiPoly source;
    std::optional<PreMap> pre_map;
    std::vector<PointConstraint> constraints;
    std::optional<int> serre_parity;
};

struct RecurrenceOutcome {
    enum class Status { Solved, Inconsistent, Underdetermined };
    Status status = Status::Inconsistent;
    BiPoly solution;  // valid iff Solved
    int nullity = 0;  // valid iff Underdetermined
};

// Solves the functional equation as an exact linear system in the unknown
// coefficients. Reports nullity instead of picking a representative when the
// constraints do not pin the solution.
inline RecurrenceOutcome solve_recurrence(const RecurrenceSpec& spec) {
    if (spec.scale == 0) throw std::invalid_argument("solve_recurrence: scale t must be nonzero");
    if (spec.degree < 0) throw std::invalid_argument("solve_recurrence: negative degree");

    std::vector<BiPoly::Key> unknowns;
    for (int i = 0; i <= spec.degree; ++i)
        for (int j = 0; i + j <= spec.degree; ++j) unknowns.push_back({i, j});

    // Column polynomial of each unknown monomial under the functional
    // equation, then one linear equation per monomial of (x, y).
    std::vector<BiPoly> cols(unknowns.size());
    for (size_t u = 0; u < unknowns.size(); ++u) {
        const auto [i, j] = unknowns[u];
        BiPoly mono = BiPoly::monomial(i, j, 1);
        if (spec.pre_map) {
            const PreMap& m = *spec.pre_map;
            BiPoly at = substitute_affine(mono, m.m11, m.m12, m.m21, m.m22, 0, 0);
            BiPoly shifted = substitute_affine(mono, m.m11, m.m12, m.m21, m.m22, m.v1, m.v2);
            cols[u] = at - shifted;
        } else {
            cols[u] = mono - substitute_affine(mono, 1, 0, 0, 1, -spec.dx, -spec.dy);
        }
    }
    const BiPoly rhs_poly = spec.source * spec.scale;

    std::map<BiPoly::Key, size_t> eq_index;
    auto note_keys = [&](const BiPoly& p) {
        for (const auto& [k, v] : p.terms()) eq_index.try_emplace(k, eq_index.size());
    };
    for (const auto& c : cols) note_keys(c);
    note_keys(rhs_poly);

    // Symmetry columns, collected with their own equation rows.
    std::vector<BiPoly> sym_cols;
    std::map<BiPoly::Key, size_t> sym_index;
    if (spec.serre_parity) {
        const Rational sign = (*spec.serre_parity % 2 == 0) ? 1 : -1;
        sym_cols.resize(unknowns.size());
        for (size_t u = 0; u < unknowns.size(); ++u) {
            const auto [i, j] = unknowns[u];
            BiPoly mono = BiPoly::monomial(i, j, 1);
            sym_cols[u] = substitute_affine(mono, -1, 0, 0, -1, 1, 0) - mono * sign;
            for (const auto& [k, v] : sym_cols[u].terms()) sym_index.try_emplace(k, sym_index.size());
        }
    }

    const size_t n_fun = eq_index.size();
    const size_t n_sym = sym_index.size();
    const size_t rows = n_fun + n_sym + spec.constraints.size();
    if (rows == 0) {
        // Trivially satisfied equation with nothing pinning the unknowns.
        RecurrenceOutcome out;
        out.status = RecurrenceOutcome::Status::Underdetermined;
        out.nullity = static_cast<int>(unknowns.size());
        return out;
    }
    LinearSystem sys;
    sys.a.assign(rows, Vec(unknowns.size(), Rational(0)));
    sys.rhs.assign(rows, Rational(0));
    for (size_t u = 0; u < unknowns.size(); ++u) {
        for (const auto& [k, v] : cols[u].terms()) sys.a[eq_index.at(k)][u] = v;
        if (spec.serre_parity)
            for (const auto& [k, v] : sym_cols[u].terms()) sys.a[n_fun + sym_index.at(k)][u] = v;
    }
    for (const auto& [k, v] : rhs_poly.terms()) sys.rhs[eq_index.at(k)] = v;
    for (size_t c = 0; c < spec.constraints.size(); ++c) {
        const auto& pc = spec.constraints[c];
        const size_t row = n_fun + n_sym + c;
        for (size_t u = 0; u < unknowns.size(); ++u)
            sys.a[row][u] = pow_int(pc.x, unknowns[u][0]) * pow_int(pc.y, unknowns[u][1]);
        sys.rhs[row] = pc.value;
    }

    SolveResult sol = solve_linear(sys);
    RecurrenceOutcome out;
    switch (sol.kind) {
        case SolveKind::Inconsistent:
            out.status = RecurrenceOutcome::Status::Inconsistent;
            break;
        case SolveKind::Underdetermined:
            out.status = RecurrenceOutcome::Status::Underdetermined;
            out.nullity = sol.nullity;
            break;
        case SolveKind::Unique: {
            out.status = RecurrenceOutcome::Status::Solved;
            BiPoly r;
            for (size_t u = 0; u < unknowns.size(); ++u)
                r.add_term(unknowns[u][0], unknowns[u][1], sol.solution[u]);
            out.solution = r;
            break;
        }
    }
    return out;
}

// Fiber-restriction recurrence with the sign handling of both t > 0 and
// t < 0: R(x,y) = R(x - sgn(t) r, y - sgn(t) iota_F) + sgn(t) t R_F(x,y).
inline RecurrenceSpec fiber_recurrence(int degree, int r, int iota_F, const Rational& t,
                                       const BiPoly& R_F) {
    if (t == 0) throw std::invalid_argument("fiber_recurrence: t must be nonzero");
    RecurrenceSpec spec;
    spec.degree = degree;
    const int sgn = t > 0 ? 1 : -1;
    spec.dx = Rational(sgn * r);
    spec.dy = Rational(sgn * iota_F);
    spec.scale = sgn * t;  // |t|
    spec.source = R_F;
    return spec;
}

// Scroll over a curve of genus g (Fano fibration of coindex 0):
// (1/n!) [2n(g-1)x + (d/r^{n-1})y + n(1-g)] * prod_{j=1}^{n-1}(ry - nx + j).
inline BiPoly scroll_over_curve(int n, int r, const Int& g, const Int& d) {
    if (n < 2) throw std::invalid_argument("scroll_over_curve: n must be >= 2");
    if (r < 1 || std::gcd(r, n) != 1) throw std::invalid_argument("scroll_over_curve: need gcd(r, n) = 1");
    if (g < 0) throw std::invalid_argument("scroll_over_curve: genus must be >= 0");
    if (d < 1) throw std::invalid_argument("scroll_over_curve: d must be >= 1");
    const Rational nf(factorial(n));
    BiPoly bracket = BiPoly::linear(Rational(2 * n * (g - 1)), Rational(d) / pow_int(Rational(r), n - 1),
                                    Rational(n * (1 - g))) *
                     (1 / nf);
    return bracket * detail::forced_product(r, n, n - 1);
}

inline Int quadric_fibration_t(int n, int r, const Int& g, const Int& e, const Int& a, const Int& b) {
    return r * (2 * g - 2 + e + a) + (n - 1) * b;
}

// Q-fibration over a curve, data (g, e, a, b) as degrees of the bundle
// package; c = 2g - 2 throughout.
inline BiPoly quadric_fibration(int n, int r, const Int& g, const Int& e, const Int& a, const Int& b) {
    if (n < 3) throw std::invalid_argument("quadric_fibration: n must be >= 3");
    if (r < 1 || std::gcd(r, n - 1) != 1)
        throw std::invalid_argument("quadric_fibration: need gcd(r, n-1) = 1");
    const Rational nf(factorial(n));
    const Int c = 2 * g - 2;
    const Int S = 2 * n * c + 2 * e + (n + 1) * a;
    const Int T = (Int(n) * c - (n - 2) * e + a) * r - Int(n) * (n - 1) * b;
    const Int U = (2 * e + a) * r * r + 2 * Int(n) * b * r;
    BiPoly bracket;
    bracket.add_term(2, 0, Rational((1 - n) * S) / nf);
    bracket.add_term(1, 1, Rational(2 * T) / nf);
    bracket.add_term(0, 2, Rational(U) / nf);
    bracket.add_term(1, 0, Rational((n - 1) * S) / nf);
    bracket.add_term(0, 1, Rational(-T) / nf);
    bracket.add_term(0, 0, Rational(-Int(n) * (n - 1) * c) / (2 * nf));
    return bracket * detail::forced_product(r, n - 1, n - 2);
}

// Del Pezzo fibration over a curve at r = 1, with the cubic residual's
// coefficients exposed.
struct DelPezzoFibration {
    BiPoly p;
    std::map<std::pair<int, int>, Rational> c;  // c[{i,j}] of x^i y^j
    Rational chi;                               // chi(L), derived or validated
};

inline DelPezzoFibration delpezzo_fibration(int n, const Int& g, const Int& d, const Int& delta,
                                            const Int& t, std::optional<Int> chi_in = std::nullopt) {
    if (n < 3) throw std::invalid_argument("delpezzo_fibration: n must be >= 3");
    if (t < 1) throw std::invalid_argument("delpezzo_fibration: t must be >= 1");
    const Rational nf(factorial(n)), n1f(factorial(n - 1)), n3f(factorial(n - 3));
    const Rational chi = Rational(d - t * delta + 2 * t) / 2 - Rational(n) * (Rational(g) - 1);
    if (chi_in && Rational(*chi_in) != chi)
        throw InconsistentInvariantsError("delpezzo_fibration: chi(L) = " + to_string(chi) +
                                          " from (d, delta, t, g), but " + chi_in->str() +
                                          " was supplied");
    const Rational td = Rational(t * delta);
    const Rational P = td / n1f - (n - 2) * Rational(d) / nf;
    const Rational Q = 2 * td / n1f - 3 * (n - 2) * Rational(d) / nf;
    const Rational W = td / n1f - 3 * (n - 2) * Rational(d) / nf;
    const Rational gm1 = Rational(g) - 1;
    DelPezzoFibration out;
    auto set = [&](int i, int j, const Rational& v) { out.c[{i, j}] = v; };
    set(3, 0, Rational((n - 2) * (n - 2)) * P);
    set(2, 1, Rational(-(n - 2)) * Q);
    set(1, 2, W);
    set(0, 3, Rational(d) / nf);
    set(2, 0, Rational(-3 * (n - 2) * (n - 2)) * P / 2);
    set(1, 1, Rational(n - 2) * Q);
    set(0, 2, -W / 2);
    set(1, 0, Rational((n - 2) * (n - 2)) * P / 2 + 2 * gm1 / n3f);
    set(0, 1, chi / Rational(factorial(n - 2)) + td / (2 * n1f) - Rational(d) * (3 * n - 4) / (2 * nf) +
                  gm1 / n3f);
    set(0, 0, -gm1 / n3f);
    out.chi = chi;
    BiPoly bracket;
    for (const auto& [ij, v] : out.c) bracket.add_term(ij.first, ij.second, v);
    out.p = bracket * detail::forced_product(1, n - 2, n - 3);
    return out;
}

// Change of polarization on a fiber bundle: with L = r*xi + b*F and
// r*K + iota_F*L = t*F, the fundamental-polarization curve pulls back as
// p_(X,L)(x, y) = p_(X,xi)(x + b*r*y/(t - iota_F*b), r*t*y/(t - iota_F*b)).
inline BiPoly twist_substitution(const BiPoly& p_fundamental, int iota_F, int r, const Int& b,
                                 const Int& t) {
    if (t == Int(iota_F) * b)
        throw DegeneratePolarizationError(
            "twist_substitution: t = iota_F * b makes the change of polarization singular");
    const Rational denom = Rational(t) - Rational(iota_F) * b;
    return substitute_affine(p_fundamental, 1, Rational(b) * r / denom, 0,
                             Rational(r) * Rational(t) / denom, 0, 0);
}

enum class PolarizationDirection { ToFundamental, FromFundamental };

// The mutually inverse substitutions of the polarization lemma. The Bezout
// pair is pinned to the minimal positive p in [1, tau] with
// sigma*p - tau*q = 1 (then q = (sigma*p - 1)/tau >= 0).
inline BiPoly polarization_transform(const BiPoly& p, int sigma, int tau,
                                     PolarizationDirection dir) {
    if (sigma < 1 || tau < 1) throw std::invalid_argument("polarization_transform: sigma, tau >= 1");
    if (std::gcd(sigma, tau) != 1)
        throw std::invalid_argument("polarization_transform: sigma and tau must be coprime");
    int pp = 1;
    while ((static_cast<long long>(sigma) * pp - 1) % tau != 0) ++pp;
    const long long qq = (static_cast<long long>(sigma) * pp - 1) / tau;
    const Rational beta(-qq);  // (1 - p sigma)/tau
    if (dir == PolarizationDirection::ToFundamental)
        return substitute_affine(p, 1, -beta, 0, Rational(pp), 0, 0);
    return substitute_affine(p, 1, beta / pp, 0, Rational(1) / pp, 0, 0);
}

// Scroll over a surface, described by the invariants
// chi0 = chi(O_S), chi = chi(L), k = K_S.A, h = A^2.
struct SurfaceScrollInput {
    int n = 0;
    Int chi0 = 0, chiL = 0, k = 0, h = 0;
};

inline BiPoly scroll_over_surface(const SurfaceScrollInput& in) {
    if (in.n < 3) throw std::invalid_argument("scroll_over_surface: n must be >= 3");
    const int n = in.n;
    const Rational nf(factorial(n));
    const Rational chi0(in.chi0), chi(in.chiL), k(in.k), h(in.h);
    const Rational nm1(n - 1);
    BiPoly bracket;
    bracket.add_term(2, 0, nm1 / 2 * (-2 * chi0 * nm1 * nm1 + 2 * chi * nm1 + (n + 1) * k - h) / nf);
    bracket.add_term(1, 1, (2 * chi0 * nm1 * nm1 - 2 * chi * nm1 - k + h) / nf);
    bracket.add_term(0, 2, (-2 * chi0 * nm1 + 2 * chi - k + h) / (2 * nf));
    bracket.add_term(1, 0, nm1 / 2 * (2 * chi0 * nm1 * nm1 - 2 * chi * nm1 - (n + 1) * k + h) / nf);
    bracket.add_term(0, 1, (-2 * chi0 * nm1 * nm1 + 2 * chi * nm1 + k - h) / (2 * nf));
    bracket.add_term(0, 0, Rational(n) * nm1 * chi0 / nf);
    return bracket * detail::forced_product(1, n - 1, n - 2);
}

// Per-level point conditions for the base chain.
struct LevelConditions {
    std::vector<PointConstraint> constraints;
    std::optional<int> serre_parity;
};

struct ChainLevel {
    int level = 0;  // the X_j index
    RecurrenceOutcome outcome;
};

// Base-chain solver over an m-dimensional base: computes
// t = s^{m-1} (rs+1)^{m(m-1)/2} A_top, solves the fiber recurrence for
// R_{X_{m-1}}, then walks Eq.-(RRR) levels down to R_{X_0}. Conditions are
// indexed by level: conditions[j] belongs to X_j. Stops at the first level
// whose system is not uniquely solvable.
inline std::vector<ChainLevel> solve_base_chain(int m, int s, int r, int iota_F,
                                                const Rational& A_top, const BiPoly& R_F,
                                                const std::vector<LevelConditions>& conditions) {
    if (m < 2) throw std::invalid_argument("solve_base_chain: m must be >= 2");
    if (s < 1) throw std::invalid_argument("solve_base_chain: s must be >= 1");
    if (r < 1 || iota_F < 1) throw std::invalid_argument("solve_base_chain: r, iota_F must be >= 1");
    if (static_cast<int>(conditions.size()) != m)
        throw std::invalid_argument("solve_base_chain: need one condition set per level 0..m-1");

    const Rational t = pow_int(Rational(s), m - 1) * pow_int(Rational(r * s + 1), m * (m - 1) / 2) * A_top;
    if (t == 0) throw std::invalid_argument("solve_base_chain: t vanished (A_top = 0)");

    std::vector<ChainLevel> chain;
    const int base_degree = std::max(R_F.degree(), -1) + 1;

    RecurrenceSpec top = fiber_recurrence(base_degree, r, iota_F, t, R_F);
    top.constraints = conditions[static_cast<size_t>(m - 1)].constraints;
    top.serre_parity = conditions[static_cast<size_t>(m - 1)].serre_parity;
    chain.push_back({m - 1, solve_recurrence(top)});
    if (chain.back().outcome.status != RecurrenceOutcome::Status::Solved) return chain;

    for (int j = m - 2; j >= 0; --j) {
        RecurrenceSpec spec;
        spec.degree = base_degree + (m - 1 - j);
        spec.scale = 1;
        spec.source = chain.back().outcome.solution;
        PreMap pm;
        pm.m11 = Rational(s * r + 1);
        pm.m12 = 0;
        pm.m21 = Rational(s * iota_F);
        pm.m22 = 1;
        pm.v1 = Rational(-s * r);
        pm.v2 = Rational(-s * iota_F);
        spec.pre_map = pm;
        spec.constraints = conditions[static_cast<size_t>(j)].constraints;
        spec.serre_parity = conditions[static_cast<size_t>(j)].serre_parity;
        chain.push_back({j, solve_recurrence(spec)});
        if (chain.back().outcome.status != RecurrenceOutcome::Status::Solved) return chain;
    }
    return chain;
}

}  // namespace hilb
