#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ellpos {

// One failed check inside a verification sweep.
struct Counterexample {
    std::string a;
    std::string c;
    std::string kind;
    std::string detail;
};

// Outcome of an exhaustive sweep over classes of order dividing
// ell^max_order_exponent.  stats counts how many checks of each kind ran.
struct SweepReport {
    std::uint64_t ell = 0;
    unsigned max_order_exponent = 0;
    std::uint64_t pairs_checked = 0;
    std::vector<Counterexample> counterexamples;
    std::map<std::string, std::uint64_t> stats;

    bool clean() const { return counterexamples.empty(); }

    void fail(std::string a, std::string c, std::string kind, std::string detail) {
        counterexamples.push_back({std::move(a), std::move(c), std::move(kind), std::move(detail)});
    }
};

} // namespace ellpos
