#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>

#include "counting.hpp"
#include "report.hpp"

namespace ellpos {

// Guards for the chain-sum evaluation of S.  max_open_interval bounds the
// number of classes strictly between A and C before chain enumeration is
// attempted; the chain count grows exponentially in that number.
struct SOptions {
    std::size_t max_open_interval = 10000;
};

// One evaluation of S(A, C) together with how it was obtained.
struct SEntry {
    GroupClass a;
    GroupClass c;
    SignedCount value;
    enum class Method { chain_sum, convolution } method;
    std::uint64_t chain_count = 0; // chains visited (chain_sum only)
};

// S(A, C) straight from the definition: the sum of chain weights over all
// A-chains with greatest element C, with S(A, A) = 1 and S(A, C) = 0 when A
// does not embed in C.
inline SEntry s_chain_sum(const GroupClass& a, const GroupClass& c, const SOptions& opts = {}) {
    require_same_ell(a, c);
    if (a == c) return {a, c, SignedCount(1), SEntry::Method::chain_sum, 0};
    if (!embeds(a, c)) return {a, c, SignedCount(0), SEntry::Method::chain_sum, 0};
    Interval iv = enumerate_interval(a, c);
    const std::size_t open = iv.members.size() - 2;
    if (open > opts.max_open_interval)
        throw resource_error("chain sum guard: open interval (" + a.str() + ", " + c.str() + ") has " +
                             std::to_string(open) + " classes, limit " +
                             std::to_string(opts.max_open_interval));
    SEntry entry{a, c, SignedCount(0), SEntry::Method::chain_sum, 0};
    for_each_chain(a, c, [&](const Chain& chain) {
        entry.value += chain_weight(chain);
        ++entry.chain_count;
    });
    return entry;
}

// Memoising evaluator for S over a fixed ell, based on the recursion
//   sum_{A <= B <= C} sub(A, B) * S(B, C) = [A = C],
// i.e. S(A, C) = -sum_{A < B <= C} sub(A, B) * S(B, C).
// Subgroup counts are cached alongside.  Not thread-safe; use one context
// per worker.
class SContext {
public:
    explicit SContext(std::uint64_t ell) : ell_(GroupClass(ell).ell()) {}

    std::uint64_t ell() const { return ell_; }

    const Count& sub(const GroupClass& a, const GroupClass& b) {
        auto [it, fresh] = sub_memo_.try_emplace(pair_key(a, b));
        if (fresh) it->second = subgroup_count(a, b);
        return it->second;
    }

    SignedCount s(const GroupClass& a, const GroupClass& c) {
        if (a.ell() != ell_ || c.ell() != ell_)
            throw std::invalid_argument("class ell does not match context ell");
        if (!embeds(a, c)) return SignedCount(0);
        if (a == c) return SignedCount(1);
        auto key = pair_key(a, c);
        if (auto it = s_memo_.find(key); it != s_memo_.end()) return it->second;
        SignedCount acc = 0;
        Interval iv = enumerate_interval(a, c);
        for (const GroupClass& b : iv.members)
            if (b != a) acc += sub(a, b) * s(b, c);
        SignedCount value = -acc;
        s_memo_.emplace(std::move(key), value);
        return value;
    }

    std::size_t cached_values() const { return s_memo_.size(); }

private:
    static std::vector<unsigned> pair_key(const GroupClass& a, const GroupClass& b) {
        std::vector<unsigned> key;
        key.reserve(a.rank() + b.rank() + 1);
        key.push_back(a.rank());
        key.insert(key.end(), a.parts().begin(), a.parts().end());
        key.insert(key.end(), b.parts().begin(), b.parts().end());
        return key;
    }

    std::uint64_t ell_;
    std::unordered_map<std::vector<unsigned>, SignedCount, PartsHash> s_memo_;
    std::unordered_map<std::vector<unsigned>, Count, PartsHash> sub_memo_;
};

inline SEntry s_convolution(SContext& ctx, const GroupClass& a, const GroupClass& c) {
    return {a, c, ctx.s(a, c), SEntry::Method::convolution, 0};
}

inline SEntry s_convolution(const GroupClass& a, const GroupClass& c) {
    require_same_ell(a, c);
    SContext ctx(a.ell());
    return s_convolution(ctx, a, c);
}

// When rank A < rank C, S factors through at most one intermediate class:
// B = the first rank(A) parts of C, k = rank C - rank A, provided every
// trailing part of C equals 1 and A embeds in B (then C = B + (Z/ell)^k and
// S(A, C) = S(A, B) * S(B, C)).  Otherwise S(A, C) = 0 and this returns
// nothing.
struct ElementarySplit {
    GroupClass base; // B
    unsigned k;      // number of elementary summands appended to reach C
};

inline std::optional<ElementarySplit> elementary_extension_split(const GroupClass& a, const GroupClass& c) {
    require_same_ell(a, c);
    if (a.rank() >= c.rank())
        throw std::invalid_argument("elementary_extension_split requires rank A < rank C");
    const unsigned ra = a.rank(), rc = c.rank();
    for (unsigned i = ra + 1; i <= rc; ++i)
        if (c.part_or_zero(i) != 1) return std::nullopt;
    std::vector<unsigned> head(c.parts().begin(), c.parts().begin() + ra);
    GroupClass b(c.ell(), std::move(head));
    if (!embeds(a, b)) return std::nullopt;
    return ElementarySplit{std::move(b), rc - ra};
}

// Exhaustive check of the structural facts about S over all pairs of
// classes of order dividing ell^max_order_exponent:
//   - both evaluation methods agree (chain sum skipped for pairs whose open
//     interval exceeds the guard; see stats["chain_checked"]),
//   - rank-increasing pairs factor through the elementary extension split,
//     or vanish when no split exists,
//   - equal-rank pairs vanish unless an embedding with elementary cokernel
//     exists,
//   - every nonzero value sits inside the elementary-cokernel band.
inline SweepReport verify_structure(std::uint64_t ell, unsigned max_order_exponent,
                                   const SOptions& opts = {}, bool chain_crosscheck = true) {
    SweepReport report;
    report.ell = GroupClass(ell).ell();
    report.max_order_exponent = max_order_exponent;
    SContext ctx(ell);
    std::vector<GroupClass> classes = enumerate_classes(ell, max_order_exponent);
    for (const GroupClass& c : classes) {
        for (const GroupClass& a : classes) {
            ++report.pairs_checked;
            const SignedCount value = ctx.s(a, c);

            if (chain_crosscheck && embeds(a, c)) {
                Interval iv = enumerate_interval(a, c);
                if (a == c || iv.members.size() - 2 <= opts.max_open_interval) {
                    ++report.stats["chain_checked"];
                    SEntry chain = s_chain_sum(a, c, opts);
                    if (chain.value != value)
                        report.fail(a.str(), c.str(), "method_disagreement",
                                    "chain sum " + chain.value.str() + " vs convolution " + value.str());
                }
            }

            if (a.rank() < c.rank()) {
                ++report.stats["rank_split_checked"];
                auto split = elementary_extension_split(a, c);
                if (split) {
                    SignedCount expect = ctx.s(a, split->base) * ctx.s(split->base, c);
                    if (value != expect)
                        report.fail(a.str(), c.str(), "rank_split_factorization",
                                    "S = " + value.str() + " but S(A,B)*S(B,C) = " + expect.str() +
                                        " with B = " + split->base.str());
                } else if (value != 0) {
                    report.fail(a.str(), c.str(), "rank_split_vanishing",
                                "no elementary extension split but S = " + value.str());
                }
            }

            if (a.rank() == c.rank() && !elementary_cokernel_embeddable(a, c)) {
                ++report.stats["equal_rank_checked"];
                if (value != 0)
                    report.fail(a.str(), c.str(), "equal_rank_vanishing",
                                "no embedding with elementary cokernel but S = " + value.str());
            }

            if (value != 0 && !elementary_cokernel_embeddable(a, c))
                report.fail(a.str(), c.str(), "support_predicate",
                            "S = " + value.str() + " outside the elementary-cokernel band");
        }
    }
    return report;
}

} // namespace ellpos
