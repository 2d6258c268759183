#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "counting.hpp"
#include "mobius.hpp"
#include "report.hpp"

namespace ellpos {

// Hard ceiling on the order of any concretely materialised group.
inline constexpr std::uint64_t kMaxConcreteOrder = 10000;
// Orders up to this get a precomputed addition table.
inline constexpr std::uint64_t kAddTableLimit = 1024;

// Caps for brute-force work.  max_order guards subgroup enumeration (raise
// it explicitly for bigger sweeps; kMaxConcreteOrder still applies).  The
// budgets bound elementary operations in exhaustive map enumeration before
// falling back to the lattice route or refusing.
struct OracleLimits {
    std::uint64_t max_order = 243;
    std::uint64_t exhaustive_budget = 50'000'000;
    std::uint64_t skew_budget = 2'000'000'000;
};

// Membership bitset over the elements of one concrete group.
struct Bits {
    std::vector<std::uint64_t> w;

    Bits() = default;
    explicit Bits(std::uint64_t n) : w((n + 63) / 64, 0) {}

    bool test(std::uint64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint64_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void clear() { std::fill(w.begin(), w.end(), 0); }

    bool subset_of(const Bits& o) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] & ~o.w[k]) return false;
        return true;
    }

    std::uint64_t popcount() const {
        std::uint64_t n = 0;
        for (std::uint64_t word : w) n += static_cast<std::uint64_t>(__builtin_popcountll(word));
        return n;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < w.size(); ++k) {
            std::uint64_t word = w[k];
            while (word) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                fn(static_cast<std::uint64_t>(k) * 64 + bit);
                word &= word - 1;
            }
        }
    }

    bool operator==(const Bits&) const = default;
    bool operator<(const Bits& o) const { return w < o.w; }
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t word : b.w) {
            h ^= word;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// A group of a given class realised as Z/ell^{c_1} x ... x Z/ell^{c_r} with
// elements indexed in mixed radix (index 0 is the identity).  Independent of
// the counting formulas: only the raw group operation lives here.
class ConcreteGroup {
public:
    explicit ConcreteGroup(const GroupClass& shape) : shape_(shape) {
        std::uint64_t order = 1;
        for (unsigned p : shape.parts()) {
            std::uint64_t m = 1;
            for (unsigned k = 0; k < p; ++k) {
                m *= shape.ell();
                if (m > kMaxConcreteOrder)
                    throw resource_error("concrete group order for " + shape.str() + " exceeds hard cap " +
                                         std::to_string(kMaxConcreteOrder));
            }
            moduli_.push_back(m);
            order *= m;
            if (order > kMaxConcreteOrder)
                throw resource_error("concrete group order for " + shape.str() + " exceeds hard cap " +
                                     std::to_string(kMaxConcreteOrder));
        }
        order_ = order;
        strides_.resize(moduli_.size());
        std::uint64_t s = 1;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= moduli_[i];
        }

        order_exp_.resize(order_);
        std::vector<std::uint64_t> digits(moduli_.size());
        for (std::uint64_t x = 0; x < order_; ++x) {
            decode(x, digits);
            unsigned e = 0;
            for (std::size_t i = 0; i < digits.size(); ++i) {
                std::uint64_t d = digits[i];
                unsigned val = shape_.parts()[i]; // valuation of d, capped at c_i
                if (d != 0) {
                    val = 0;
                    while (d % shape_.ell() == 0) { d /= shape_.ell(); ++val; }
                }
                e = std::max(e, shape_.parts()[i] - std::min(val, shape_.parts()[i]));
            }
            order_exp_[x] = static_cast<std::uint8_t>(e);
        }

        if (order_ <= kAddTableLimit) {
            add_table_.resize(order_ * order_);
            std::vector<std::uint64_t> dy(moduli_.size());
            for (std::uint64_t x = 0; x < order_; ++x) {
                decode(x, digits);
                for (std::uint64_t y = 0; y < order_; ++y) {
                    decode(y, dy);
                    std::uint64_t idx = 0;
                    for (std::size_t i = 0; i < moduli_.size(); ++i) {
                        std::uint64_t d = digits[i] + dy[i];
                        if (d >= moduli_[i]) d -= moduli_[i];
                        idx += d * strides_[i];
                    }
                    add_table_[x * order_ + y] = static_cast<std::uint16_t>(idx);
                }
            }
        }
    }

    const GroupClass& shape() const { return shape_; }
    std::uint64_t ell() const { return shape_.ell(); }
    std::uint64_t order() const { return order_; }
    unsigned rank() const { return shape_.rank(); }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        if (!add_table_.empty()) return add_table_[x * order_ + y];
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            std::uint64_t d = (x / strides_[i]) % moduli_[i] + (y / strides_[i]) % moduli_[i];
            if (d >= moduli_[i]) d -= moduli_[i];
            idx += d * strides_[i];
        }
        return idx;
    }

    std::uint64_t neg(std::uint64_t x) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            std::uint64_t d = (x / strides_[i]) % moduli_[i];
            if (d != 0) d = moduli_[i] - d;
            idx += d * strides_[i];
        }
        return idx;
    }

    // log_ell of the order of element x.
    unsigned element_order_exp(std::uint64_t x) const { return order_exp_[x]; }

    // All x with ell^e * x = 0.
    std::vector<std::uint64_t> torsion_elements(unsigned e) const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t x = 0; x < order_; ++x)
            if (order_exp_[x] <= e) out.push_back(x);
        return out;
    }

private:
    void decode(std::uint64_t x, std::vector<std::uint64_t>& digits) const {
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            digits[i] = (x / strides_[i]) % moduli_[i];
    }

    GroupClass shape_;
    std::vector<std::uint64_t> moduli_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t order_ = 1;
    std::vector<std::uint8_t> order_exp_;
    std::vector<std::uint16_t> add_table_;
};

struct Subgroup {
    Bits bits;
    std::uint64_t size = 0;
    GroupClass iso_type;
    // cumulative_torsion[e] = #{x in H : ell^e x = 0}, e = 0..exponent_log of
    // the ambient group.
    std::vector<std::uint64_t> cumulative_torsion;
};

// The full subgroup lattice of one concrete group, with classical Moebius
// function evaluation.  Subgroups are sorted by (size, membership words), so
// index 0 is the trivial subgroup and the last index the whole group.
class SubgroupLattice {
public:
    SubgroupLattice(ConcreteGroup group, std::vector<Subgroup> subgroups)
        : group_(std::move(group)), subs_(std::move(subgroups)) {}

    const ConcreteGroup& group() const { return group_; }
    std::size_t size() const { return subs_.size(); }
    const Subgroup& subgroup(std::size_t i) const { return subs_[i]; }
    const std::vector<Subgroup>& subgroups() const { return subs_; }

    std::size_t trivial_index() const { return 0; }
    std::size_t top_index() const { return subs_.size() - 1; }

    bool contains(std::size_t inner, std::size_t outer) const {
        return subs_[inner].bits.subset_of(subs_[outer].bits);
    }

    // #{x in subgroup i : ell^e x = 0}.
    std::uint64_t torsion_size(std::size_t i, unsigned e) const {
        const auto& ct = subs_[i].cumulative_torsion;
        return ct[std::min<std::size_t>(e, ct.size() - 1)];
    }

    // Moebius function of the lattice by the defining recursion
    //   mu(B, B) = 1,  sum_{B <= Y <= C} mu(B, Y) = 0,  0 when B is not
    // contained in C.  Memoised per (B, C) pair.
    SignedCount mu(std::size_t b, std::size_t c) const {
        if (b == c) return SignedCount(1);
        if (!contains(b, c)) return SignedCount(0);
        const std::uint64_t key = static_cast<std::uint64_t>(b) * subs_.size() + c;
        if (auto it = mu_memo_.find(key); it != mu_memo_.end()) return it->second;
        SignedCount acc = 0;
        for (std::size_t y = 0; y < subs_.size(); ++y)
            if (y != c && subs_[y].size < subs_[c].size && contains(b, y) && contains(y, c))
                acc += mu(b, y);
        SignedCount value = -acc;
        mu_memo_.emplace(key, value);
        return value;
    }

    // mu(X, top) for every X at once, via the dual recursion
    //   mu(X, top) = -sum_{X < Y <= top} mu(Y, top),
    // processing subgroups by decreasing size.
    const std::vector<SignedCount>& mu_to_top() const {
        if (mu_top_.empty() && !subs_.empty()) {
            const std::size_t n = subs_.size();
            mu_top_.assign(n, SignedCount(0));
            std::vector<std::size_t> by_size_desc(n);
            std::iota(by_size_desc.begin(), by_size_desc.end(), 0);
            std::sort(by_size_desc.begin(), by_size_desc.end(),
                      [&](std::size_t x, std::size_t y) { return subs_[x].size > subs_[y].size; });
            mu_top_[top_index()] = 1;
            for (std::size_t x : by_size_desc) {
                if (x == top_index()) continue;
                SignedCount acc = 0;
                for (std::size_t y = 0; y < n; ++y)
                    if (y != x && subs_[y].size > subs_[x].size && contains(x, y)) acc += mu_top_[y];
                mu_top_[x] = -acc;
            }
        }
        return mu_top_;
    }

    Count count_isomorphic_subgroups(const GroupClass& a) const {
        std::uint64_t n = 0;
        for (const Subgroup& s : subs_)
            if (s.iso_type == a) ++n;
        return Count(n);
    }

private:
    ConcreteGroup group_;
    std::vector<Subgroup> subs_;
    mutable std::unordered_map<std::uint64_t, SignedCount> mu_memo_;
    mutable std::vector<SignedCount> mu_top_;
};

namespace detail {

// ell^e as u64, refusing anything past 2^31 (keeps later products exact).
inline std::uint64_t small_pow_ell(std::uint64_t ell, std::uint64_t e, const char* what) {
    std::uint64_t v = 1;
    for (std::uint64_t k = 0; k < e; ++k) {
        v *= ell;
        if (v > (1ull << 31))
            throw resource_error(std::string(what) + ": ell^" + std::to_string(e) + " is too large");
    }
    return v;
}

// Isomorphism class of a subgroup from its cumulative torsion profile:
// N_e / N_{e-1} = ell^{r_e} with r_e the number of parts >= e, and the parts
// are recovered as the conjugate of (r_1, r_2, ...).
inline GroupClass iso_type_from_torsion(std::uint64_t ell, const std::vector<std::uint64_t>& cumulative) {
    std::vector<unsigned> ranks; // r_e for e = 1..
    for (std::size_t e = 1; e < cumulative.size(); ++e) {
        std::uint64_t num = cumulative[e], den = cumulative[e - 1];
        if (den == 0 || num % den != 0)
            throw std::logic_error("torsion profile is not multiplicative");
        std::uint64_t q = num / den;
        unsigned r = 0;
        while (q > 1) {
            if (q % ell != 0) throw std::logic_error("torsion quotient is not a power of ell");
            q /= ell;
            ++r;
        }
        ranks.push_back(r);
    }
    std::vector<unsigned> parts;
    if (!ranks.empty()) {
        for (unsigned j = 0; j < ranks[0]; ++j) {
            unsigned part = 0;
            for (unsigned r : ranks)
                if (r > j) ++part;
            parts.push_back(part);
        }
    }
    return GroupClass(ell, std::move(parts));
}

inline Subgroup make_subgroup(const ConcreteGroup& g, Bits bits) {
    const unsigned emax = g.shape().exponent_log();
    std::vector<std::uint64_t> cumulative(emax + 1, 0);
    bits.for_each([&](std::uint64_t x) {
        for (unsigned k = g.element_order_exp(x); k <= emax; ++k) ++cumulative[k];
    });
    GroupClass iso = iso_type_from_torsion(g.ell(), cumulative);
    std::uint64_t size = bits.popcount();
    return Subgroup{std::move(bits), size, std::move(iso), std::move(cumulative)};
}

} // namespace detail

// Enumerates every subgroup by closing the set {trivial} under joins with
// cyclic subgroups: <S, g> is the union of the cosets S, S+g, S+2g, ...
// Refuses groups larger than limits.max_order.
inline SubgroupLattice enumerate_subgroups(ConcreteGroup g, const OracleLimits& limits = {}) {
    if (g.order() > limits.max_order)
        throw resource_error("subgroup enumeration refused: order " + std::to_string(g.order()) +
                             " exceeds cap " + std::to_string(limits.max_order) +
                             " (raise max_order to allow)");

    const std::uint64_t n = g.order();
    std::vector<Bits> found;
    std::unordered_map<Bits, std::size_t, BitsHash> index_of;

    Bits trivial(n);
    trivial.set(0);
    index_of.emplace(trivial, 0);
    found.push_back(std::move(trivial));

    // distinct cyclic subgroups with one generator each
    std::vector<std::uint64_t> cyclic_gens;
    for (std::uint64_t x = 1; x < n; ++x) {
        Bits cyc(n);
        std::uint64_t e = 0;
        do {
            cyc.set(e);
            e = g.add(e, x);
        } while (e != 0);
        if (index_of.emplace(cyc, found.size()).second) {
            found.push_back(std::move(cyc));
            cyclic_gens.push_back(x);
        }
    }

    for (std::size_t i = 0; i < found.size(); ++i) {
        for (std::uint64_t gen : cyclic_gens) {
            if (found[i].test(gen)) continue;
            Bits join = found[i];
            std::uint64_t shift = gen;
            while (!found[i].test(shift)) {
                found[i].for_each([&](std::uint64_t u) { join.set(g.add(u, shift)); });
                shift = g.add(shift, gen);
            }
            if (index_of.find(join) == index_of.end()) {
                index_of.emplace(join, found.size());
                found.push_back(std::move(join));
            }
        }
    }

    std::vector<Subgroup> subs;
    subs.reserve(found.size());
    for (Bits& b : found) subs.push_back(detail::make_subgroup(g, std::move(b)));
    std::sort(subs.begin(), subs.end(), [](const Subgroup& x, const Subgroup& y) {
        if (x.size != y.size) return x.size < y.size;
        return x.bits < y.bits;
    });
    return SubgroupLattice(std::move(g), std::move(subs));
}

// sub(A, G) by direct inspection of the subgroup lattice.
inline Count oracle_subgroup_count(const GroupClass& a, const GroupClass& g_shape,
                                   const OracleLimits& limits = {}) {
    require_same_ell(a, g_shape);
    SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(g_shape), limits);
    return lattice.count_isomorphic_subgroups(a);
}

namespace detail {

// Size of the subgroup generated by the given elements (BFS closure).
inline std::uint64_t closure_size(const ConcreteGroup& g, const std::vector<std::uint64_t>& gens,
                                  Bits& visited, std::vector<std::uint64_t>& stack) {
    visited.clear();
    stack.clear();
    visited.set(0);
    stack.push_back(0);
    std::uint64_t count = 1;
    while (!stack.empty()) {
        std::uint64_t u = stack.back();
        stack.pop_back();
        for (std::uint64_t gen : gens) {
            std::uint64_t v = g.add(u, gen);
            if (!visited.test(v)) {
                visited.set(v);
                stack.push_back(v);
                ++count;
            }
        }
    }
    return count;
}

using u128 = unsigned __int128;

// Counts homomorphism tuples (images of the standard generators of
// domain_shape in target) whose generated image has the required size.
inline Count count_maps_by_image_size(const GroupClass& domain_shape, const ConcreteGroup& target,
                                      std::uint64_t required_image, std::uint64_t budget) {
    const unsigned r = domain_shape.rank();
    if (r == 0) return Count(required_image == 1 ? 1 : 0);

    std::vector<std::vector<std::uint64_t>> lists;
    lists.reserve(r);
    u128 tuples = 1;
    for (unsigned ai : domain_shape.parts()) {
        lists.push_back(target.torsion_elements(ai));
        tuples *= lists.back().size();
    }
    u128 work = tuples * target.order() * r;
    if (work > budget)
        throw resource_error("exhaustive map enumeration over budget (" +
                             std::to_string(static_cast<double>(work)) + " element ops)");

    std::uint64_t hits = 0;
    std::vector<std::uint64_t> images(r);
    Bits visited(target.order());
    std::vector<std::uint64_t> stack;
    std::vector<std::size_t> pos(r, 0);
    while (true) {
        for (unsigned i = 0; i < r; ++i) images[i] = lists[i][pos[i]];
        if (closure_size(target, images, visited, stack) == required_image) ++hits;
        unsigned i = r;
        while (i > 0) {
            --i;
            if (++pos[i] < lists[i].size()) break;
            pos[i] = 0;
            if (i == 0) return Count(hits);
        }
    }
}

} // namespace detail

// |Inj(A, G)| by exhaustive enumeration of generator images; a tuple is
// injective exactly when its image subgroup has |A| elements.
inline Count count_injections_exhaustive(const GroupClass& a, const ConcreteGroup& g,
                                         std::uint64_t budget = OracleLimits{}.exhaustive_budget) {
    require_same_ell(a, g.shape());
    if (a.order() > BigInt(g.order())) return Count(0);
    std::uint64_t domain_order = 1;
    for (unsigned p : a.parts())
        for (unsigned k = 0; k < p; ++k) domain_order *= a.ell();
    return detail::count_maps_by_image_size(a, g, domain_order, budget);
}

// |Surj(B, A)| for B = domain_shape onto a concrete target of class A; a
// tuple is surjective exactly when its image is the whole target.
inline Count count_surjections_exhaustive(const GroupClass& domain_shape, const ConcreteGroup& target,
                                          std::uint64_t budget = OracleLimits{}.exhaustive_budget) {
    require_same_ell(domain_shape, target.shape());
    return detail::count_maps_by_image_size(domain_shape, target, target.order(), budget);
}

// |Surj(B, A)| through the subgroup lattice of the target:
//   #Surj(B, A) = sum_H mu(H, A) * #Hom(B, H),
// with #Hom(B, H) = prod_i #{x in H : ell^{b_i} x = 0} read off torsion
// profiles.  Independent of the closed counting formulas.
inline Count count_surjections_via_lattice(const GroupClass& domain_shape, const SubgroupLattice& target) {
    require_same_ell(domain_shape, target.group().shape());
    const auto& mu_top = target.mu_to_top();
    SignedCount acc = 0;
    for (std::size_t h = 0; h < target.size(); ++h) {
        if (mu_top[h] == 0) continue;
        SignedCount hom = 1;
        for (unsigned bi : domain_shape.parts()) hom *= SignedCount(target.torsion_size(h, bi));
        acc += mu_top[h] * hom;
    }
    if (acc < 0) throw std::logic_error("negative surjection count from lattice inversion");
    return Count(acc);
}

// |Aut(A)| as surjections A ->> A counted through A's own lattice.
inline Count oracle_automorphism_count(const GroupClass& a, const OracleLimits& limits = {}) {
    SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(a), limits);
    return count_surjections_via_lattice(a, lattice);
}

// |Inj(A, G)| = #{subgroups of G isomorphic to A} * |Aut(A)|, both factors
// taken from subgroup lattices.
inline Count count_injections_via_lattice(const GroupClass& a, const SubgroupLattice& ambient,
                                          const OracleLimits& limits = {}) {
    require_same_ell(a, ambient.group().shape());
    Count iso = ambient.count_isomorphic_subgroups(a);
    if (iso == 0) return iso;
    return iso * oracle_automorphism_count(a, limits);
}

namespace detail {

struct FormEnumeration {
    std::uint64_t modulus;
    std::vector<std::uint64_t> steps;  // value step per enumerated entry
    std::vector<std::uint64_t> counts; // number of values per entry
};

// Checks B(x, x) = 0 for every x by running over all coefficient tuples of
// the shape; matrix is given per ordered generator pair (row-major r x r).
inline bool alternating_on_all_elements(const GroupClass& a, std::uint64_t modulus,
                                        const std::vector<std::uint64_t>& matrix) {
    const unsigned r = a.rank();
    std::vector<std::uint64_t> coeff(r, 0);
    std::vector<std::uint64_t> cap(r);
    for (unsigned i = 0; i < r; ++i) {
        std::uint64_t c = 1;
        for (unsigned k = 0; k < a.parts()[i]; ++k) c *= a.ell();
        cap[i] = c;
    }
    while (true) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < r; ++i) {
            if (coeff[i] == 0) continue;
            for (unsigned j = 0; j < r; ++j) {
                if (coeff[j] == 0) continue;
                v = (v + coeff[i] % modulus * (coeff[j] % modulus) % modulus * matrix[i * r + j]) % modulus;
            }
        }
        if (v != 0) return false;
        unsigned i = r;
        while (i > 0) {
            --i;
            if (++coeff[i] < cap[i]) break;
            coeff[i] = 0;
            if (i == 0) return true;
        }
    }
}

} // namespace detail

// |Lambda(A)| by enumerating every biadditive map on generator pairs and
// keeping those with B(x, x) = 0 for all x.  Entry (i, j) ranges over the
// multiples of ell^{a_1 - min(a_i, a_j)} in Z/ell^{a_1}.
inline Count count_alternating_forms_full(const GroupClass& a,
                                          std::uint64_t budget = OracleLimits{}.exhaustive_budget) {
    const unsigned r = a.rank();
    const std::uint64_t modulus = detail::small_pow_ell(a.ell(), a.exponent_log(), "form enumeration");
    const std::uint64_t combos = detail::small_pow_ell(a.ell(), a.order_exponent(), "form enumeration");

    detail::u128 total = 1;
    std::vector<std::uint64_t> counts(r * r), steps(r * r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
            std::uint64_t cnt =
                detail::small_pow_ell(a.ell(), std::min(a.parts()[i], a.parts()[j]), "form enumeration");
            counts[i * r + j] = cnt;
            steps[i * r + j] = modulus / cnt;
            total *= cnt;
        }
    detail::u128 work = total * combos * (r ? r * r : 1);
    if (work > budget)
        throw resource_error("full alternating-form enumeration over budget");

    if (r == 0) return Count(1);
    std::uint64_t hits = 0;
    std::vector<std::uint64_t> matrix(r * r, 0);
    std::vector<std::uint64_t> pos(r * r, 0);
    while (true) {
        if (detail::alternating_on_all_elements(a, modulus, matrix)) ++hits;
        std::size_t e = matrix.size();
        while (e > 0) {
            --e;
            if (++pos[e] < counts[e]) {
                matrix[e] = pos[e] * steps[e];
                break;
            }
            pos[e] = 0;
            matrix[e] = 0;
            if (e == 0) return Count(hits);
        }
    }
}

// |Lambda(A)| by enumerating skew matrices (zero diagonal, lower triangle
// the negation of the upper) and verifying B(x, x) = 0 exhaustively for
// each.  Covers shapes whose full enumeration is out of budget.
inline Count count_alternating_forms_skew(const GroupClass& a,
                                          std::uint64_t budget = OracleLimits{}.skew_budget) {
    const unsigned r = a.rank();
    if (r == 0) return Count(1);
    const std::uint64_t modulus = detail::small_pow_ell(a.ell(), a.exponent_log(), "form enumeration");
    const std::uint64_t combos = detail::small_pow_ell(a.ell(), a.order_exponent(), "form enumeration");

    std::vector<std::pair<unsigned, unsigned>> upper;
    std::vector<std::uint64_t> counts, steps;
    detail::u128 total = 1;
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = i + 1; j < r; ++j) {
            std::uint64_t cnt =
                detail::small_pow_ell(a.ell(), std::min(a.parts()[i], a.parts()[j]), "form enumeration");
            upper.emplace_back(i, j);
            counts.push_back(cnt);
            steps.push_back(modulus / cnt);
            total *= cnt;
        }
    detail::u128 work = total * combos * r * r;
    if (work > budget)
        throw resource_error("skew alternating-form enumeration over budget");

    std::uint64_t hits = 0;
    std::vector<std::uint64_t> matrix(r * r, 0);
    std::vector<std::uint64_t> pos(upper.size(), 0);
    while (true) {
        if (detail::alternating_on_all_elements(a, modulus, matrix)) ++hits;
        if (upper.empty()) return Count(hits);
        std::size_t e = upper.size();
        while (e > 0) {
            --e;
            auto [i, j] = upper[e];
            if (++pos[e] < counts[e]) {
                matrix[i * r + j] = pos[e] * steps[e];
                matrix[j * r + i] = (modulus - matrix[i * r + j]) % modulus;
                break;
            }
            pos[e] = 0;
            matrix[i * r + j] = 0;
            matrix[j * r + i] = 0;
            if (e == 0) return Count(hits);
        }
    }
}

enum class MapKind { injective, surjective, alternating_forms };

// Brute-force map counting with automatic tier selection: exhaustive
// generator-image enumeration when it fits the budget, otherwise the
// lattice route (for forms: full matrix enumeration, otherwise the verified
// skew enumeration).  For surjective, a is the codomain class and g the
// domain; for alternating_forms, g must realise a itself.
inline Count count_maps(const GroupClass& a, const ConcreteGroup& g, MapKind kind,
                        const OracleLimits& limits = {}) {
    switch (kind) {
    case MapKind::injective:
        try {
            return count_injections_exhaustive(a, g, limits.exhaustive_budget);
        } catch (const resource_error&) {
            SubgroupLattice ambient = enumerate_subgroups(g, limits);
            return count_injections_via_lattice(a, ambient, limits);
        }
    case MapKind::surjective: {
        ConcreteGroup target(a);
        try {
            return count_surjections_exhaustive(g.shape(), target, limits.exhaustive_budget);
        } catch (const resource_error&) {
            SubgroupLattice lattice = enumerate_subgroups(std::move(target), limits);
            return count_surjections_via_lattice(g.shape(), lattice);
        }
    }
    case MapKind::alternating_forms:
        if (g.shape() != a)
            throw std::invalid_argument("alternating forms are counted on A itself; pass G of class A");
        try {
            return count_alternating_forms_full(a, limits.exhaustive_budget);
        } catch (const resource_error&) {
            return count_alternating_forms_skew(a, limits.skew_budget);
        }
    }
    throw std::logic_error("unknown map kind");
}

// Compares S(A, C) with the Moebius function of the concrete subgroup
// lattice of C summed over subgroups isomorphic to A.
struct AmalgamCheck {
    SignedCount s_value;
    SignedCount mu_sum;
    std::uint64_t matching_subgroups = 0;
    bool equal() const { return s_value == mu_sum; }
};

inline AmalgamCheck amalgam_check(const GroupClass& a, const GroupClass& c, const OracleLimits& limits = {}) {
    require_same_ell(a, c);
    SContext ctx(a.ell());
    AmalgamCheck out{ctx.s(a, c), SignedCount(0), 0};
    SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(c), limits);
    const auto& mu_top = lattice.mu_to_top();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        if (lattice.subgroup(i).iso_type == a) {
            out.mu_sum += mu_top[i];
            ++out.matching_subgroups;
        }
    }
    return out;
}

namespace detail {

// ell^e saturated at the hard concrete-group cap: a suitable max_order for
// sweeps over classes of order dividing ell^e.
inline std::uint64_t sweep_order_cap(std::uint64_t ell, unsigned e) {
    std::uint64_t v = 1;
    for (unsigned k = 0; k < e; ++k) {
        v *= ell;
        if (v >= kMaxConcreteOrder) return kMaxConcreteOrder;
    }
    return v;
}

} // namespace detail

// amalgam_check over every pair with |C| dividing ell^max_order_exponent.
inline SweepReport amalgam_sweep(std::uint64_t ell, unsigned max_order_exponent) {
    SweepReport report;
    report.ell = GroupClass(ell).ell();
    report.max_order_exponent = max_order_exponent;
    OracleLimits limits;
    limits.max_order = detail::sweep_order_cap(ell, max_order_exponent);
    SContext ctx(ell);
    std::vector<GroupClass> classes = enumerate_classes(ell, max_order_exponent);
    for (const GroupClass& c : classes) {
        SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(c), limits);
        const auto& mu_top = lattice.mu_to_top();
        std::unordered_map<std::vector<unsigned>, SignedCount, PartsHash> sums;
        for (std::size_t i = 0; i < lattice.size(); ++i)
            sums[lattice.subgroup(i).iso_type.parts()] += mu_top[i];
        for (const GroupClass& a : classes) {
            ++report.pairs_checked;
            SignedCount expect = 0;
            if (auto it = sums.find(a.parts()); it != sums.end()) expect = it->second;
            if (ctx.s(a, c) != expect)
                report.fail(a.str(), c.str(), "amalgam",
                            "S = " + ctx.s(a, c).str() + " but lattice mu sum = " + expect.str());
        }
    }
    return report;
}

// Checks, for every G with |G| dividing ell^max_order_exponent:
//   - both mu evaluation routes agree on mu(1, G),
//   - mu(1, G) = (-1)^n ell^{n(n-1)/2} for elementary G of rank n and 0 for
//     non-elementary G,
//   - when G has a unique subgroup of class A and no embedding of A into G
//     has elementary cokernel, that subgroup's mu to the top is 0.
inline SweepReport verify_mu_dichotomy(std::uint64_t ell, unsigned max_order_exponent) {
    SweepReport report;
    report.ell = GroupClass(ell).ell();
    report.max_order_exponent = max_order_exponent;
    OracleLimits limits;
    limits.max_order = detail::sweep_order_cap(ell, max_order_exponent);
    std::vector<GroupClass> classes = enumerate_classes(ell, max_order_exponent);
    for (const GroupClass& gshape : classes) {
        ++report.pairs_checked;
        SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(gshape), limits);
        const auto& mu_top = lattice.mu_to_top();
        SignedCount mu_def = lattice.mu(lattice.trivial_index(), lattice.top_index());
        if (mu_def != mu_top[lattice.trivial_index()])
            report.fail("[]", gshape.str(), "mu_route_disagreement",
                        "defining recursion " + mu_def.str() + " vs dual recursion " +
                            mu_top[lattice.trivial_index()].str());

        const unsigned n = gshape.rank();
        const bool elementary = gshape.exponent_log() <= 1;
        SignedCount expect = 0;
        if (elementary) {
            expect = pow_ell(ell, static_cast<std::uint64_t>(n) * (n - 1) / 2);
            if (n % 2 == 1) expect = -expect;
        }
        ++report.stats["hall_checked"];
        if (mu_def != expect)
            report.fail("[]", gshape.str(), "hall_value",
                        "mu(1, G) = " + mu_def.str() + ", expected " + expect.str());

        std::unordered_map<std::vector<unsigned>, std::pair<std::uint64_t, std::size_t>, PartsHash> tally;
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            auto& entry = tally[lattice.subgroup(i).iso_type.parts()];
            ++entry.first;
            entry.second = i;
        }
        for (const auto& [parts, entry] : tally) {
            if (entry.first != 1) continue;
            GroupClass a(ell, parts);
            if (elementary_cokernel_embeddable(a, gshape)) continue;
            ++report.stats["unique_subgroup_checked"];
            if (mu_top[entry.second] != 0)
                report.fail(a.str(), gshape.str(), "unique_subgroup_mu",
                            "unique subgroup of its class has mu = " + mu_top[entry.second].str());
        }
    }
    return report;
}

} // namespace ellpos
