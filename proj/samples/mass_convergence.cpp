// Watches the truncated measure fill up its unit mass as the order bound
// grows, and the first moment approach 1.

#include <iostream>

#include "ellpos/ellpos.hpp"

int main(int argc, char** argv) {
    const std::uint64_t ell = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 3;
    const unsigned max_bound = argc > 2 ? static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10)) : 8;

    std::cout << "ell = " << ell << ", Euler product truncated at 64 terms\n";
    std::cout << "M  classes  total mass          moment at [1]\n";
    for (unsigned m = 0; m <= max_bound; ++m) {
        auto measure = ellpos::TruncatedMeasure::nu_measure(ell, m, 64, 64);
        auto mass = ellpos::total_mass(measure);
        auto first = ellpos::moment(ellpos::GroupClass(ell, {1}), measure);
        std::cout << m << "  " << measure.weights.size() << "\t  "
                  << ellpos::decimal_string(mass, 64) << "  "
                  << ellpos::decimal_string(first.value, 64) << "\n";
    }
    return 0;
}
