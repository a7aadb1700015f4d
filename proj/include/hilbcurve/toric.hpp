#pragma once

#include "hilbcurve/errors.hpp"
#include "hilbcurve/fanocore.hpp"
#include "hilbcurve/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hilb {

// Full-dimensional lattice polytope given by its integer vertex list.
struct LatticePolytope {
    int dim = 0;
    std::vector<std::vector<Int>> vertices;

    void validate() const {
        if (dim < 2 || dim > 4) throw std::invalid_argument("LatticePolytope: dim must be 2..4");
        if (vertices.size() < static_cast<size_t>(dim) + 1)
            throw std::invalid_argument("LatticePolytope: need at least dim+1 vertices");
        for (const auto& v : vertices)
            if (static_cast<int>(v.size()) != dim)
                throw std::invalid_argument("LatticePolytope: vertex of wrong dimension");
    }

    std::vector<std::vector<Int>> sorted_vertices() const {
        auto s = vertices;
        std::sort(s.begin(), s.end());
        return s;
    }
};

namespace toric_detail {

using IPoint = std::vector<Int>;

inline Int dot(const IPoint& a, const IPoint& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Bareiss fraction-free elimination; every division is exact.
inline Int det_int(std::vector<IPoint> m) {
    const size_t k = m.size();
    if (k == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (size_t col = 0; col + 1 < k; ++col) {
        size_t piv = col;
        while (piv < k && m[piv][col] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (size_t i = col + 1; i < k; ++i) {
            for (size_t j = col + 1; j < k; ++j)
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[col][col];
    }
    return sign * m[k - 1][k - 1];
}

// Normal of the hyperplane spanned by k-1 row vectors in Z^k (generalized
// cross product via signed minors).
inline IPoint cross(const std::vector<IPoint>& rows, int k) {
    IPoint normal(static_cast<size_t>(k), Int(0));
    for (int drop = 0; drop < k; ++drop) {
        std::vector<IPoint> minor;
        for (const auto& r : rows) {
            IPoint m;
            for (int j = 0; j < k; ++j)
                if (j != drop) m.push_back(r[static_cast<size_t>(j)]);
            minor.push_back(std::move(m));
        }
        Int d = minor.empty() ? Int(1) : det_int(minor);
        normal[static_cast<size_t>(drop)] = (drop % 2 == 0) ? d : -d;
    }
    return normal;
}

struct Facet {
    IPoint normal;  // primitive; <normal, x> <= offset on the polytope
    Int offset;

    bool operator<(const Facet& o) const {
        if (normal != o.normal) return normal < o.normal;
        return offset < o.offset;
    }
};

inline void make_primitive(IPoint& a, Int& b) {
    Int g = 0;
    for (const auto& x : a) g = boost::multiprecision::gcd(g, x);
    if (g > 1) {
        for (auto& x : a) x /= g;
        b /= g;  // exact: b = <a, vertex> scales with a
    }
}

// All supporting facet hyperplanes of conv(points), by scanning the
// hyperplanes spanned by dim-subsets. Fine at this scale (<= ~12 vertices).
inline std::vector<Facet> facets_of(const std::vector<IPoint>& points, int k) {
    std::set<Facet> found;
    const size_t n = points.size();
    std::vector<bool> take(n, false);
    std::fill(take.begin(), take.begin() + k, true);
    // iterate over k-subsets via prev_permutation on the selection mask
    do {
        std::vector<const IPoint*> sel;
        for (size_t i = 0; i < n; ++i)
            if (take[i]) sel.push_back(&points[i]);
        std::vector<IPoint> diffs;
        for (int i = 1; i < k; ++i) {
            IPoint d(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j) d[static_cast<size_t>(j)] = (*sel[static_cast<size_t>(i)])[static_cast<size_t>(j)] - (*sel[0])[static_cast<size_t>(j)];
            diffs.push_back(std::move(d));
        }
        IPoint normal = cross(diffs, k);
        bool zero = std::all_of(normal.begin(), normal.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        Int b = dot(normal, *sel[0]);
        int lower = 0, higher = 0;
        for (const auto& p : points) {
            Int v = dot(normal, p);
            if (v > b) ++higher;
            if (v < b) ++lower;
        }
        if (higher > 0 && lower > 0) continue;  // not supporting
        if (higher > 0) {
            for (auto& x : normal) x = -x;
            b = -b;
        }
        Facet f{std::move(normal), std::move(b)};
        make_primitive(f.normal, f.offset);
        found.insert(std::move(f));
    } while (std::prev_permutation(take.begin(), take.end()));
    return {found.begin(), found.end()};
}

// Fan triangulation of conv(points): apex at the lexicographically smallest
// vertex, recursing into the facets it does not lie on. Returns index
// (d+1)-tuples into `points`.
inline std::vector<std::vector<size_t>> triangulate(const std::vector<IPoint>& points, int k) {
    if (points.size() < static_cast<size_t>(k) + 1)
        throw std::invalid_argument("triangulate: too few points for the dimension");
    if (k == 1) {
        size_t lo = 0, hi = 0;
        for (size_t i = 1; i < points.size(); ++i) {
            if (points[i] < points[lo]) lo = i;
            if (points[i] > points[hi]) hi = i;
        }
        if (lo == hi) throw std::invalid_argument("triangulate: degenerate segment");
        return {{lo, hi}};
    }
    auto facets = facets_of(points, k);
    if (facets.empty()) throw std::invalid_argument("triangulate: degenerate point set");
    size_t apex = 0;
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i] < points[apex]) apex = i;
    std::vector<std::vector<size_t>> out;
    for (const auto& f : facets) {
        if (dot(f.normal, points[apex]) == f.offset) continue;  // apex on facet
        std::vector<size_t> on;
        for (size_t i = 0; i < points.size(); ++i)
            if (dot(f.normal, points[i]) == f.offset) on.push_back(i);
        // Drop a coordinate the normal sees; projection is injective on the facet.
        int drop = 0;
        for (int j = 0; j < k; ++j)
            if (f.normal[static_cast<size_t>(j)] != 0) drop = j;
        std::vector<IPoint> proj;
        for (size_t i : on) {
            IPoint q;
            for (int j = 0; j < k; ++j)
                if (j != drop) q.push_back(points[i][static_cast<size_t>(j)]);
            proj.push_back(std::move(q));
        }
        for (const auto& simplex : triangulate(proj, k - 1)) {
            std::vector<size_t> lifted{apex};
            for (size_t local : simplex) lifted.push_back(on[local]);
            out.push_back(std::move(lifted));
        }
    }
    return out;
}

}  // namespace toric_detail

// Polar dual P* = {y : <y, x> >= -1 for all x in P}; defined (with integer
// vertices) exactly when P is reflexive.
inline LatticePolytope dual_polytope(const LatticePolytope& p) {
    p.validate();
    auto facets = toric_detail::facets_of(p.vertices, p.dim);
    if (static_cast<int>(facets.size()) < p.dim + 1)
        throw std::invalid_argument("dual_polytope: degenerate polytope");
    LatticePolytope dual;
    dual.dim = p.dim;
    for (const auto& f : facets) {
        if (f.offset <= 0)
            throw std::invalid_argument("dual_polytope: origin is not strictly interior");
        if (f.offset != 1) {
            std::string v = "(";
            for (size_t i = 0; i < f.normal.size(); ++i)
                v += (i ? "," : "") + (Rational(-f.normal[i]) / f.offset).str();
            throw NotReflexiveError("dual_polytope: fractional dual vertex " + v + ")");
        }
        std::vector<Int> vert;
        for (const auto& a : f.normal) vert.push_back(-a);
        dual.vertices.push_back(std::move(vert));
    }
    return dual;
}

// n! times the Euclidean volume, via the fan triangulation and integer
// determinants.
inline Int normalized_volume(const LatticePolytope& p) {
    p.validate();
    auto tris = toric_detail::triangulate(p.vertices, p.dim);
    Int vol = 0;
    for (const auto& s : tris) {
        std::vector<toric_detail::IPoint> rows;
        for (size_t i = 1; i < s.size(); ++i) {
            toric_detail::IPoint d(static_cast<size_t>(p.dim));
            for (int j = 0; j < p.dim; ++j)
                d[static_cast<size_t>(j)] = p.vertices[s[i]][static_cast<size_t>(j)] - p.vertices[s[0]][static_cast<size_t>(j)];
            rows.push_back(std::move(d));
        }
        vol += boost::multiprecision::abs(toric_detail::det_int(rows));
    }
    if (vol == 0) throw std::invalid_argument("normalized_volume: degenerate polytope");
    return vol;
}

// Integer points of scale*P, listed in lexicographic order.
inline std::vector<std::vector<Int>> enumerate_lattice_points(const LatticePolytope& p,
                                                              const Rational& scale) {
    p.validate();
    if (scale < 0) throw std::invalid_argument("lattice_points: scale must be nonnegative");
    auto facets = toric_detail::facets_of(p.vertices, p.dim);
    std::vector<Int> lo(static_cast<size_t>(p.dim)), hi(static_cast<size_t>(p.dim));
    for (int j = 0; j < p.dim; ++j) {
        Int mn = p.vertices[0][static_cast<size_t>(j)], mx = mn;
        for (const auto& v : p.vertices) {
            mn = std::min(mn, v[static_cast<size_t>(j)]);
            mx = std::max(mx, v[static_cast<size_t>(j)]);
        }
        lo[static_cast<size_t>(j)] = ceil_rat(scale * mn);
        hi[static_cast<size_t>(j)] = floor_rat(scale * mx);
    }
    std::vector<std::vector<Int>> pts;
    std::vector<Int> cur = lo;
    if (std::equal(lo.begin(), lo.end(), hi.begin(), [](const Int& a, const Int& b) { return a <= b; })) {
        while (true) {
            bool inside = true;
            for (const auto& f : facets)
                if (Rational(toric_detail::dot(f.normal, cur)) > scale * f.offset) {
                    inside = false;
                    break;
                }
            if (inside) pts.push_back(cur);
            int j = p.dim - 1;
            while (j >= 0) {
                if (cur[static_cast<size_t>(j)] < hi[static_cast<size_t>(j)]) {
                    ++cur[static_cast<size_t>(j)];
                    for (int jj = j + 1; jj < p.dim; ++jj) cur[static_cast<size_t>(jj)] = lo[static_cast<size_t>(jj)];
                    break;
                }
                --j;
            }
            if (j < 0) break;
        }
    }
    return pts;
}

inline Int lattice_points(const LatticePolytope& p, const Rational& scale) {
    return Int(enumerate_lattice_points(p, scale).size());
}

struct FanoIndexResult {
    int iota = 1;
    LatticePolytope QH;  // polytope of the fundamental divisor H
};

// Largest iota such that (dual - w)/iota is a lattice polytope for some
// lattice point w. Witnesses are searched among dual vertices first, then
// all lattice points of the dual; iota decrements on failure.
inline FanoIndexResult fano_index(const LatticePolytope& dual) {
    dual.validate();
    auto try_witness = [&](int iota, const std::vector<Int>& w, LatticePolytope& out) {
        out.dim = dual.dim;
        out.vertices.clear();
        for (const auto& v : dual.vertices) {
            std::vector<Int> q(v.size());
            for (size_t j = 0; j < v.size(); ++j) {
                Int diff = v[j] - w[j];
                if (diff % iota != 0) return false;
                q[j] = diff / iota;
            }
            out.vertices.push_back(std::move(q));
        }
        return true;
    };
    std::vector<std::vector<Int>> witnesses = dual.vertices;
    for (const auto& pt : enumerate_lattice_points(dual, 1))
        if (std::find(witnesses.begin(), witnesses.end(), pt) == witnesses.end())
            witnesses.push_back(pt);
    for (int iota = dual.dim + 1; iota >= 2; --iota) {
        LatticePolytope qh;
        for (const auto& w : witnesses)
            if (try_witness(iota, w, qh)) return {iota, qh};
    }
    return {1, dual};
}

// A toric Fano record assembled from fan-polytope vertex data. The dual is
// always recomputed; a supplied dual is cross-checked only.
struct ToricFanoRecord {
    std::optional<int> id;
    LatticePolytope primal;
    LatticePolytope dual;
    int n = 0;
    int iota = 1;
    LatticePolytope QH;
    Int degree = 0;      // (-K)^n = normalized volume of the dual
    Int vol_primal = 0;  // normalized volume of the fan polytope

    static ToricFanoRecord build(const LatticePolytope& primal,
                                 std::optional<LatticePolytope> supplied_dual = std::nullopt,
                                 std::optional<int> id = std::nullopt) {
        ToricFanoRecord rec;
        rec.id = id;
        rec.primal = primal;
        rec.n = primal.dim;
        rec.dual = dual_polytope(primal);
        if (supplied_dual && supplied_dual->sorted_vertices() != rec.dual.sorted_vertices())
            throw InconsistentInvariantsError(
                "ToricFanoRecord: supplied dual disagrees with the computed one" +
                (id ? " (record " + std::to_string(*id) + ")" : std::string()));
        auto fi = fano_index(rec.dual);
        rec.iota = fi.iota;
        rec.QH = fi.QH;
        rec.degree = normalized_volume(rec.dual);
        rec.vol_primal = normalized_volume(rec.primal);
        return rec;
    }
};

// h^0(tH) as the lattice-point count of t * Q_H.
inline Int toric_h0(const ToricFanoRecord& rec, int t) {
    if (t < 0) throw std::invalid_argument("toric_h0: t must be nonnegative");
    return lattice_points(rec.QH, Rational(t));
}

struct ToricHC {
    FactoredHC hc;
    ReducibilityReport reducibility;
};

// Assembles the h^0 table by lattice-point counting and hands it to the
// Fano interpolation.
inline ToricHC toric_hc(const ToricFanoRecord& rec, int r) {
    FanoInput in;
    in.n = rec.n;
    in.iota = rec.iota;
    in.r = r;
    const int c = in.coindex();
    for (int t = 0; t <= c; ++t) in.h0.push_back(toric_h0(rec, t));
    ToricHC out;
    out.hc = fano_hc(in);
    out.reducibility = reducibility(out.hc);
    return out;
}

}  // namespace hilb
