#pragma once

#include "hilbcurve/hilbcurve.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace hilbtest {

// Deterministic xorshift generator for the property suites.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }

    int uniform(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    hilb::Rational rational(int num_bound = 9, int den_bound = 4) {
        int n = uniform(-num_bound, num_bound);
        int d = uniform(1, den_bound);
        return hilb::Rational(n, d);
    }

    hilb::BiPoly bipoly(int max_degree = 3, int terms = 6) {
        hilb::BiPoly p;
        for (int t = 0; t < terms; ++t) {
            int i = uniform(0, max_degree);
            int j = uniform(0, max_degree - i);
            p.add_term(i, j, rational());
        }
        return p;
    }

    hilb::UniPoly unipoly(int max_degree = 5) {
        std::vector<hilb::Rational> c(static_cast<size_t>(uniform(1, max_degree)) + 1);
        for (auto& x : c) x = rational();
        return hilb::UniPoly::from_coeffs(std::move(c));
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(HILBCURVE_DATA_DIR) + "/" + name;
}

// prod of linear factors lead * (z + c_k)^m built directly, for golden values.
inline hilb::UniPoly q_product(const hilb::Rational& lead,
                               const std::vector<std::pair<hilb::Rational, int>>& factors) {
    hilb::UniPoly q(lead);
    for (const auto& [c, m] : factors)
        for (int i = 0; i < m; ++i) q = q * hilb::UniPoly::linear(c);
    return q;
}

}  // namespace hilbtest
