#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "group_class.hpp"

namespace ellpos {

// Closed interval [A, C] in the embedding order.  members is empty when the
// interval itself is empty (A does not embed in C); otherwise it contains
// both endpoints and is sorted by class_order_less.
struct Interval {
    GroupClass lo;
    GroupClass hi;
    std::vector<GroupClass> members;
};

namespace detail {

// Emits every partition b with a <= b <= c componentwise, descending parts.
template <typename Fn>
void walk_interval(const GroupClass& a, const GroupClass& c, Fn&& emit) {
    const unsigned rc = c.rank();
    std::vector<unsigned> current;
    current.reserve(rc);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned prev) {
        if (i == rc) {
            emit(current);
            return;
        }
        const unsigned lo = a.part_or_zero(i + 1);
        const unsigned hi = std::min(c.parts()[i], prev);
        for (unsigned v = hi; v >= std::max(lo, 1u); --v) {
            current.push_back(v);
            rec(i + 1, v);
            current.pop_back();
        }
        if (lo == 0) emit(current); // all later parts zero
    };
    rec(0, std::numeric_limits<unsigned>::max());
}

} // namespace detail

inline Interval enumerate_interval(const GroupClass& a, const GroupClass& c) {
    require_same_ell(a, c);
    Interval iv{a, c, {}};
    if (!embeds(a, c)) return iv;
    detail::walk_interval(a, c, [&](const std::vector<unsigned>& parts) {
        iv.members.emplace_back(a.ell(), parts);
    });
    std::sort(iv.members.begin(), iv.members.end(), class_order_less);
    return iv;
}

// An A-chain with greatest element max(links): base = A, links a nonempty
// strictly increasing sequence A < A_1 < ... < A_i.
struct Chain {
    GroupClass base;
    std::vector<GroupClass> links;

    bool valid() const {
        if (links.empty()) return false;
        const GroupClass* prev = &base;
        for (const GroupClass& x : links) {
            if (x.ell() != base.ell()) return false;
            if (x == *prev || !embeds(*prev, x)) return false;
            prev = &x;
        }
        return true;
    }
};

// Streams every A-chain whose greatest element is C, in a deterministic
// order: depth-first from the top, extending downward through the open
// interval sorted by class_order_less.  Yields nothing when A = C or A does
// not embed in C.  Chains are built on the fly; only the interval member
// list is materialised.
template <typename Fn>
void for_each_chain(const GroupClass& a, const GroupClass& c, Fn&& fn) {
    require_same_ell(a, c);
    if (a == c || !embeds(a, c)) return;
    Interval iv = enumerate_interval(a, c);
    std::vector<GroupClass> open;
    for (const GroupClass& m : iv.members)
        if (m != a && m != c) open.push_back(m);

    std::vector<const GroupClass*> stack; // chosen links, top first
    stack.push_back(&c);
    std::function<void()> rec = [&]() {
        Chain chain{a, {}};
        chain.links.reserve(stack.size());
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) chain.links.push_back(**it);
        fn(chain);
        const GroupClass& bottom = *stack.back();
        for (const GroupClass& x : open) {
            if (x != bottom && embeds(x, bottom)) {
                stack.push_back(&x);
                rec();
                stack.pop_back();
            }
        }
    };
    rec();
}

// Materialises chains (mostly for inspection and the CLI); throws
// resource_error when more than limit chains exist.
inline std::vector<Chain> enumerate_chains(const GroupClass& a, const GroupClass& c,
                                           std::size_t limit = 1u << 20) {
    std::vector<Chain> out;
    for_each_chain(a, c, [&](const Chain& chain) {
        if (out.size() >= limit)
            throw resource_error("chain enumeration exceeds limit of " + std::to_string(limit));
        out.push_back(chain);
    });
    return out;
}

// True when A embeds in C with an embedding whose cokernel is elementary
// abelian (killed by ell).  Componentwise this is the band condition
// max(c_i - 1, 0) <= a_i <= c_i for all i.
inline bool elementary_cokernel_embeddable(const GroupClass& a, const GroupClass& c) {
    require_same_ell(a, c);
    if (a.rank() > c.rank()) return false;
    for (std::size_t i = 1; i <= c.rank(); ++i) {
        unsigned ai = a.part_or_zero(i);
        unsigned ci = c.part_or_zero(i);
        if (ai > ci || ai + 1 < ci) return false;
    }
    return true;
}

// All classes of order dividing ell^max_order_exponent, sorted by
// class_order_less.  The count is the partial sum of the partition numbers
// p(0) + ... + p(max_order_exponent).
inline std::vector<GroupClass> enumerate_classes(std::uint64_t ell, unsigned max_order_exponent) {
    std::vector<GroupClass> out;
    std::vector<unsigned> current;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned maxpart) {
        out.emplace_back(ell, current);
        for (unsigned v = std::min(remaining, maxpart); v >= 1; --v) {
            current.push_back(v);
            rec(remaining - v, v);
            current.pop_back();
        }
    };
    rec(max_order_exponent, max_order_exponent);
    std::sort(out.begin(), out.end(), class_order_less);
    return out;
}

} // namespace ellpos
