#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "counting.hpp"

namespace ellpos {

// Weights are kept as exact rationals; precision only enters when a value
// is rendered (decimal) or rounded (dyadic).  That makes determinism and
// identities like moment(trivial) = total_mass exact rather than
// approximate.
using Rational = boost::multiprecision::cpp_rational;

// prod_{i=1}^{n} (1 - ell^{-i}), the truncated Euler factor.
inline Rational truncated_euler_product(std::uint64_t ell, unsigned n) {
    (void)GroupClass(ell); // validate ell
    Rational acc = 1;
    BigInt p = 1;
    for (unsigned i = 1; i <= n; ++i) {
        p *= ell;
        acc *= Rational(p - 1, p);
    }
    return acc;
}

// sum_{i>n} ell^{-i} = ell^{-n} / (ell - 1): bounds the relative gap
// between the truncated product and its limit.
inline Rational euler_tail_bound(std::uint64_t ell, unsigned n) {
    return Rational(1, pow_ell(ell, n) * (ell - 1));
}

struct NuValue {
    Rational value;       // truncated product / |Aut A|, exact
    Rational lower_bound; // value * (1 - tail): the untruncated limit lies in (lower_bound, value)
    unsigned product_terms;
    unsigned precision_bits;
};

// nu_N(A) = (prod_{i=1}^{N} (1 - ell^{-i})) / |Aut(A)|.  Strictly
// decreasing in N; nu(A) * aut_count(A) is the same for every A.
inline NuValue nu(const GroupClass& a, unsigned product_terms, unsigned precision_bits = 128) {
    if (product_terms == 0)
        throw std::invalid_argument("product_terms must be >= 1");
    Rational p = truncated_euler_product(a.ell(), product_terms);
    Rational value = p / Rational(automorphism_count(a));
    Rational lower = value * (Rational(1) - euler_tail_bound(a.ell(), product_terms));
    return {std::move(value), std::move(lower), product_terms, precision_bits};
}

// A finitely supported measure on classes: the nu weights over all classes
// of order dividing ell^order_bound_exponent, or a point mass.
struct TruncatedMeasure {
    std::uint64_t ell = 3;
    unsigned order_bound_exponent = 0; // M: support is |A| <= ell^M
    unsigned product_truncation = 0;   // N of the Euler product (0 for point masses)
    unsigned precision_bits = 128;
    std::vector<std::pair<GroupClass, Rational>> weights; // sorted by class_order_less

    static TruncatedMeasure nu_measure(std::uint64_t ell, unsigned order_bound_exponent,
                                       unsigned product_truncation, unsigned precision_bits = 128) {
        TruncatedMeasure m;
        m.ell = GroupClass(ell).ell();
        m.order_bound_exponent = order_bound_exponent;
        m.product_truncation = product_truncation;
        m.precision_bits = precision_bits;
        Rational p = truncated_euler_product(ell, product_truncation);
        for (const GroupClass& a : enumerate_classes(ell, order_bound_exponent))
            m.weights.emplace_back(a, p / Rational(automorphism_count(a)));
        return m;
    }

    static TruncatedMeasure point_mass(const GroupClass& b, unsigned precision_bits = 128) {
        TruncatedMeasure m;
        m.ell = b.ell();
        m.order_bound_exponent = b.order_exponent();
        m.product_truncation = 0;
        m.precision_bits = precision_bits;
        m.weights.emplace_back(b, Rational(1));
        return m;
    }
};

inline Rational total_mass(const TruncatedMeasure& m) {
    Rational acc = 0;
    for (const auto& [cls, w] : m.weights) acc += w;
    return acc;
}

struct MomentValue {
    Rational value;
    unsigned order_bound_exponent; // support bound the sum ran over
    unsigned product_truncation;
};

// sum_B |Surj(B, A)| * m({B}): the A-moment of the measure.  Only the
// finitely many supported classes contribute, so the value is exact for the
// truncated measure.
inline MomentValue moment(const GroupClass& a, const TruncatedMeasure& m) {
    if (a.ell() != m.ell)
        throw std::invalid_argument("moment class ell does not match measure ell");
    Rational acc = 0;
    for (const auto& [cls, w] : m.weights)
        acc += Rational(surjection_count(cls, a)) * w;
    return {std::move(acc), m.order_bound_exponent, m.product_truncation};
}

// Nearest multiple of 2^-bits, ties to even.
inline Rational dyadic_round(const Rational& v, unsigned bits) {
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    bool negative = num < 0;
    if (negative) num = -num;
    num <<= bits;
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    BigInt twice = r * 2;
    if (twice > den || (twice == den && (q & 1) != 0)) ++q;
    if (negative) q = -q;
    return Rational(q, BigInt(1) << bits);
}

// Fixed-point decimal with ceil(bits * log10(2)) digits, round half up.
// Deterministic: equal rationals render identically.
inline std::string decimal_string(const Rational& v, unsigned precision_bits) {
    const unsigned digits = static_cast<unsigned>((static_cast<std::uint64_t>(precision_bits) * 30103 + 99999) / 100000);
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    bool negative = num < 0;
    if (negative) num = -num;
    BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
    BigInt scaled = (num * scale * 2 + den) / (2 * den); // round half up
    std::string raw = scaled.str();
    if (raw.size() <= digits) raw.insert(0, digits + 1 - raw.size(), '0');
    std::string out = raw.substr(0, raw.size() - digits) + "." + raw.substr(raw.size() - digits);
    if (negative && scaled != 0) out.insert(0, 1, '-');
    return out;
}

} // namespace ellpos
