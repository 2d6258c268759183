// Prints the matrix of S(A, C) over all classes of order dividing ell^4,
// together with the subgroup counts it inverts.

#include <iomanip>
#include <iostream>

#include "ellpos/ellpos.hpp"

int main(int argc, char** argv) {
    const std::uint64_t ell = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 3;
    const unsigned bound = argc > 2 ? static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10)) : 4;

    ellpos::SContext ctx(ell);
    auto classes = ellpos::enumerate_classes(ell, bound);

    std::cout << "S(A, C) for ell = " << ell << ", |C| <= " << ell << "^" << bound << "\n\n";
    std::cout << std::setw(10) << "" ;
    for (const auto& c : classes) std::cout << std::setw(10) << c.str();
    std::cout << "\n";
    for (const auto& a : classes) {
        std::cout << std::setw(10) << a.str();
        for (const auto& c : classes) std::cout << std::setw(10) << ctx.s(a, c).str();
        std::cout << "\n";
    }

    std::cout << "\nrow A of sub(A, -) against the same columns:\n\n";
    for (const auto& a : classes) {
        std::cout << std::setw(10) << a.str();
        for (const auto& c : classes) std::cout << std::setw(10) << ellpos::subgroup_count(a, c).str();
        std::cout << "\n";
    }
    return 0;
}
