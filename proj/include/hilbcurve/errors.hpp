#pragma once

#include <stdexcept>
#include <string>

namespace hilb {

// p(x,y) is not a function of z = r*y - iota*x alone, i.e. rk<K,L> = 2 shape.
struct RankTwoError : std::runtime_error {
    explicit RankTwoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A facet of the polytope lies at lattice distance > 1, so the dual has a
// fractional vertex.
struct NotReflexiveError : std::runtime_error {
    explicit NotReflexiveError(const std::string& msg) : std::runtime_error(msg) {}
};

// The substitution x_bar = x + b r y/(t - n b) needs t - n b != 0.
struct DegeneratePolarizationError : std::runtime_error {
    explicit DegeneratePolarizationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller-supplied invariants contradict the ones derived from the data.
struct InconsistentInvariantsError : std::runtime_error {
    explicit InconsistentInvariantsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hilb
