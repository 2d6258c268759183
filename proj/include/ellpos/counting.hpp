#pragma once

#include <cstdint>

#include "poset.hpp"

namespace ellpos {

// Exact non-negative counts (injections, automorphisms, subgroups).
using Count = BigInt;
// Exact signed values (Moebius-type functions, chain weights).
using SignedCount = BigInt;

inline Count pow_ell(std::uint64_t ell, std::uint64_t exponent) {
    return boost::multiprecision::pow(BigInt(ell), static_cast<unsigned>(exponent));
}

// |Lambda(A)|: alternating bilinear forms A x A -> Z/ell^{a_1}, which is
// ell^{sum_{i<j} min(a_i, a_j)}.  The trivial class carries one (empty) form.
inline Count alternating_form_count(const GroupClass& a) {
    const auto& parts = a.parts();
    std::uint64_t e = 0;
    for (std::size_t j = 1; j < parts.size(); ++j)
        e += static_cast<std::uint64_t>(j) * parts[j]; // min(a_i, a_j) = a_j for i < j
    return pow_ell(a.ell(), e);
}

// |Inj(A, B)|: injective homomorphisms from a group of class A into one of
// class B,
//   |Lambda(A)| * prod_{i=1}^{r} (ell^{s_i} - ell^{t_i}),
//   s_i = sum_{j>=i} min(a_i, b_j),  t_i = sum_{j>=i} min(a_i - 1, b_j).
// Zero exactly when A does not embed in B.
inline Count injection_count(const GroupClass& a, const GroupClass& b) {
    require_same_ell(a, b);
    Count acc = alternating_form_count(a);
    const auto& ap = a.parts();
    const auto& bp = b.parts();
    for (std::size_t i = 0; i < ap.size(); ++i) {
        const unsigned ai = ap[i];
        std::uint64_t s = 0, t = 0;
        for (std::size_t j = i; j < bp.size(); ++j) {
            s += std::min(ai, bp[j]);
            t += std::min(ai - 1, bp[j]);
        }
        if (s == t) return Count(0);
        acc *= pow_ell(a.ell(), s) - pow_ell(a.ell(), t);
    }
    return acc;
}

inline Count automorphism_count(const GroupClass& a) {
    return injection_count(a, a);
}

// sub(A, B): subgroups of a group of class B isomorphic to A, computed as
// |Inj(A, B)| / |Aut(A)|.  The division is always exact; a failure would
// indicate an internal inconsistency and raises std::logic_error.
inline Count subgroup_count(const GroupClass& a, const GroupClass& b) {
    Count inj = injection_count(a, b);
    if (inj == 0) return inj;
    Count aut = automorphism_count(a);
    Count q, r;
    boost::multiprecision::divide_qr(inj, aut, q, r);
    if (r != 0)
        throw std::logic_error("injection count " + inj.str() + " not divisible by automorphism count " +
                               aut.str() + " for A=" + a.str() + " B=" + b.str());
    return q;
}

// |Surj(B, A)|: surjections from class B onto class A; equals |Inj(A, B)|.
inline Count surjection_count(const GroupClass& b, const GroupClass& a) {
    return injection_count(a, b);
}

// Weight of an A-chain A < A_1 < ... < A_i:
//   (-1)^i * sub(A, A_1) * sub(A_1, A_2) * ... * sub(A_{i-1}, A_i).
inline SignedCount chain_weight(const Chain& chain) {
    if (!chain.valid())
        throw std::invalid_argument("chain links must be nonempty and strictly increasing");
    SignedCount acc = 1;
    const GroupClass* prev = &chain.base;
    for (const GroupClass& x : chain.links) {
        acc *= subgroup_count(*prev, x);
        prev = &x;
    }
    return (chain.links.size() % 2 == 1) ? -acc : acc;
}

} // namespace ellpos
