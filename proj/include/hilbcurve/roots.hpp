#pragma once

#include "hilbcurve/rational.hpp"
#include "hilbcurve/unipoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hilb {

struct RationalRoots {
    // (root, multiplicity), sorted ascending by root.
    std::vector<std::pair<Rational, int>> roots;
    // Monic, free of rational roots; q = lead * prod (z - root_k)^m_k * cofactor.
    UniPoly cofactor;

    int total_multiplicity() const {
        int s = 0;
        for (const auto& [r, m] : roots) s += m;
        return s;
    }
};

namespace detail {

inline std::vector<Int> positive_divisors(Int n) {
    n = boost::multiprecision::abs(n);
    std::vector<Int> divs;
    if (n == 0) return divs;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            divs.push_back(i);
            if (i * i != n) divs.push_back(n / i);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// One rational root of q, if any: candidates p/s with p | constant term and
// s | leading term of the primitive integer form.
inline bool find_rational_root(const UniPoly& q, Rational& out) {
    if (q.degree() < 1) return false;
    UniPoly p = q.primitive_integer();
    int low = 0;
    while (p[low] == 0) ++low;  // z = 0 roots
    if (low > 0) {
        out = 0;
        return true;
    }
    if (q.degree() == 1) {
        out = -q[0] / q[1];
        return true;
    }
    const auto nums = positive_divisors(numerator(p[0]));
    const auto dens = positive_divisors(numerator(p[p.degree()]));
    for (const Int& a : nums)
        for (const Int& s : dens) {
            Rational cand(a, s);
            if (q.eval(cand) == 0) {
                out = cand;
                return true;
            }
            if (q.eval(-cand) == 0) {
                out = -cand;
                return true;
            }
        }
    return false;
}

}  // namespace detail

// All rational roots with multiplicity, plus the root-free monic cofactor.
// Degrees here are tiny, so fresh candidate enumeration per deflation is fine.
inline RationalRoots rational_roots(const UniPoly& q) {
    if (q.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    RationalRoots res;
    UniPoly cur = q;
    Rational root;
    std::vector<std::pair<Rational, int>> found;
    while (detail::find_rational_root(cur, root)) {
        cur = cur.deflate(root);
        auto it = std::find_if(found.begin(), found.end(),
                               [&](const auto& pr) { return pr.first == root; });
        if (it == found.end())
            found.emplace_back(root, 1);
        else
            ++it->second;
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.roots = std::move(found);
    res.cofactor = cur.monic();
    return res;
}

namespace detail {

// Sturm chain of a squarefree polynomial; each entry rescaled to a primitive
// integer polynomial (positive scaling preserves the sign data).
inline std::vector<UniPoly> sturm_chain(const UniPoly& f) {
    std::vector<UniPoly> chain;
    chain.push_back(f.primitive_integer());
    if (f.degree() >= 1) chain.push_back(f.derivative().primitive_integer());
    while (chain.back().degree() >= 1) {
        UniPoly q, r;
        UniPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
        if (r.is_zero()) break;
        chain.push_back((-r).primitive_integer());
    }
    return chain;
}

inline int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline int sturm_distinct_real_roots(const UniPoly& squarefree) {
    if (squarefree.degree() <= 0) return 0;
    auto chain = sturm_chain(squarefree);
    std::vector<int> at_pos, at_neg;
    for (const auto& f : chain) {
        int l = sign_of(f.lead());
        at_pos.push_back(l);
        at_neg.push_back(f.degree() % 2 == 0 ? l : -l);
    }
    return variations(at_neg) - variations(at_pos);
}

}  // namespace detail

// Exact count of real roots of q over the whole line. With distinct = false,
// roots are counted with multiplicity: the multiple part is gcd(q, q') and
// recursion peels one layer of multiplicity at a time.
inline int count_real_roots(const UniPoly& q, bool distinct = true) {
    if (q.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    if (q.degree() <= 0) return 0;
    UniPoly sf = squarefree_part(q);
    int d = detail::sturm_distinct_real_roots(sf);
    if (distinct) return d;
    UniPoly g = gcd(q, q.derivative());
    return d + (g.degree() >= 1 ? count_real_roots(g, false) : 0);
}

}  // namespace hilb
