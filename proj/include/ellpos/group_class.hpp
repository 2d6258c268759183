#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace ellpos {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod_u64(acc, base, m);
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

// Largest single part accepted when building a class; keeps orders and
// exponent sums comfortably inside fixed-width arithmetic used elsewhere.
inline constexpr unsigned kMaxPartValue = 1u << 20;
inline constexpr std::size_t kMaxPartCount = 1u << 16;

// Isomorphism class of a finite abelian ell-group, i.e. a direct sum
//   Z/ell^{a_1} + ... + Z/ell^{a_r}   with a_1 >= a_2 >= ... >= a_r >= 1.
// Stored in canonical form: parts strictly positive, non-increasing, no
// trailing zeros.  The trivial group is the empty partition.
class GroupClass {
public:
    GroupClass(std::uint64_t ell, std::vector<unsigned> parts = {})
        : ell_(ell), parts_(std::move(parts)) {
        if (ell_ < 3 || ell_ % 2 == 0 || !detail::is_prime_u64(ell_))
            throw std::invalid_argument("ell must be an odd prime >= 3, got " + std::to_string(ell_));
        if (parts_.size() > kMaxPartCount)
            throw std::invalid_argument("too many parts");
        for (unsigned p : parts_)
            if (p > kMaxPartValue)
                throw std::invalid_argument("part value out of range: " + std::to_string(p));
        std::sort(parts_.begin(), parts_.end(), std::greater<unsigned>());
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    std::uint64_t ell() const { return ell_; }
    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned rank() const { return static_cast<unsigned>(parts_.size()); }
    bool trivial() const { return parts_.empty(); }

    // a_i with 1-based index, zero beyond the rank.
    unsigned part_or_zero(std::size_t i) const {
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0u;
    }

    // log_ell of the group order, i.e. the partition sum.
    unsigned order_exponent() const {
        unsigned s = 0;
        for (unsigned p : parts_) s += p;
        return s;
    }

    // log_ell of the group exponent (largest part, 0 for the trivial group).
    unsigned exponent_log() const { return parts_.empty() ? 0u : parts_.front(); }

    BigInt order() const { return boost::multiprecision::pow(BigInt(ell_), order_exponent()); }
    BigInt exponent() const { return boost::multiprecision::pow(BigInt(ell_), exponent_log()); }

    bool operator==(const GroupClass& other) const = default;

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        out += ']';
        return out;
    }

    // Parses "[2,1]" (whitespace tolerated, order normalised, zero parts
    // dropped); "[]" is the trivial class.
    static GroupClass parse(std::uint64_t ell, std::string_view text) {
        const auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        std::string_view outer = trim(text);
        if (outer.size() < 2 || outer.front() != '[' || outer.back() != ']')
            throw std::invalid_argument("partition must look like [2,1] or [], got '" + std::string(text) + "'");
        std::string_view body = trim(outer.substr(1, outer.size() - 2));
        std::vector<unsigned> parts;
        if (!body.empty()) {
            std::size_t pos = 0;
            while (true) {
                std::size_t comma = body.find(',', pos);
                std::string_view tok = trim(body.substr(
                    pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
                unsigned long value = 0;
                auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
                if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
                    throw std::invalid_argument("bad partition part '" + std::string(tok) + "'");
                if (value > kMaxPartValue)
                    throw std::invalid_argument("partition part too large: " + std::string(tok));
                parts.push_back(static_cast<unsigned>(value));
                if (comma == std::string_view::npos) break;
                pos = comma + 1;
            }
        }
        return GroupClass(ell, std::move(parts));
    }

private:
    std::uint64_t ell_;
    std::vector<unsigned> parts_;
};

inline void require_same_ell(const GroupClass& a, const GroupClass& b) {
    if (a.ell() != b.ell())
        throw std::invalid_argument("mismatched ell: " + std::to_string(a.ell()) + " vs " + std::to_string(b.ell()));
}

// Embedding order: [A] <= [B] iff a_i <= b_i for every i (zero-padded).
inline bool embeds(const GroupClass& a, const GroupClass& b) {
    require_same_ell(a, b);
    if (a.rank() > b.rank()) return false;
    for (std::size_t i = 0; i < a.parts().size(); ++i)
        if (a.parts()[i] > b.parts()[i]) return false;
    return true;
}

// Number of parts of size >= i; equals the rank of the ell^{i-1}-power
// subgroup.  i must be positive.
inline unsigned rank_prefix(const GroupClass& a, unsigned i) {
    if (i == 0) throw std::invalid_argument("rank_prefix index must be >= 1");
    unsigned n = 0;
    for (unsigned p : a.parts()) {
        if (p >= i) ++n;
        else break;
    }
    return n;
}

// A + (Z/ell)^i: appends i parts equal to 1.
inline GroupClass add_elementary(const GroupClass& a, unsigned i) {
    std::vector<unsigned> parts = a.parts();
    parts.insert(parts.end(), i, 1u);
    return GroupClass(a.ell(), std::move(parts));
}

// A + Z/ell^j; j = 0 returns A unchanged.
inline GroupClass insert_part(const GroupClass& a, unsigned j) {
    if (j == 0) return a;
    std::vector<unsigned> parts = a.parts();
    parts.push_back(j);
    return GroupClass(a.ell(), std::move(parts));
}

// B / ell^e B, the largest quotient of exponent dividing ell^e: part-wise
// min(b_i, e), zero parts dropped.
inline GroupClass mod_power_quotient(const GroupClass& b, unsigned e) {
    std::vector<unsigned> parts;
    parts.reserve(b.rank());
    for (unsigned p : b.parts()) parts.push_back(std::min(p, e));
    return GroupClass(b.ell(), std::move(parts));
}

// Deterministic enumeration order: ascending group order, then parts in
// descending lexicographic order ([2] before [1,1]).
inline bool class_order_less(const GroupClass& a, const GroupClass& b) {
    unsigned sa = a.order_exponent(), sb = b.order_exponent();
    if (sa != sb) return sa < sb;
    return a.parts() > b.parts();
}

struct PartsHash {
    std::size_t operator()(const std::vector<unsigned>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (unsigned x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace ellpos
