#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cohen_lenstra.hpp"
#include "lattice.hpp"
#include "mobius.hpp"
#include "report.hpp"

namespace ellpos {

using Json = nlohmann::json;

// Counts are emitted as decimal strings: they routinely exceed 2^53 and
// must survive JSON round trips unharmed.
inline std::string count_str(const BigInt& v) { return v.str(); }

inline Json to_json(const Counterexample& ce) {
    return Json{{"a", ce.a}, {"c", ce.c}, {"kind", ce.kind}, {"detail", ce.detail}};
}

inline Json to_json(const SweepReport& report) {
    Json ces = Json::array();
    for (const Counterexample& ce : report.counterexamples) ces.push_back(to_json(ce));
    Json stats = Json::object();
    for (const auto& [k, v] : report.stats) stats[k] = v;
    return Json{{"ell", report.ell},
                {"bound", report.max_order_exponent},
                {"pairs_checked", report.pairs_checked},
                {"counterexamples", ces},
                {"stats", stats}};
}

inline Json to_json(const SEntry& entry) {
    Json j{{"ell", entry.a.ell()},
           {"a", entry.a.str()},
           {"c", entry.c.str()},
           {"value", count_str(entry.value)},
           {"method", entry.method == SEntry::Method::chain_sum ? "chain" : "conv"}};
    if (entry.method == SEntry::Method::chain_sum) j["chains"] = entry.chain_count;
    return j;
}

inline Json measure_to_json(const TruncatedMeasure& m) {
    Json weights = Json::array();
    for (const auto& [cls, w] : m.weights)
        weights.push_back(Json{{"class", cls.str()}, {"weight", decimal_string(w, m.precision_bits)}});
    return Json{{"ell", m.ell},
                {"order_bound", m.order_bound_exponent},
                {"product_truncation", m.product_truncation},
                {"precision_bits", m.precision_bits},
                {"weights", weights},
                {"total_mass", decimal_string(total_mass(m), m.precision_bits)}};
}

// Subgroup lattice dump: every subgroup with size and class, plus the
// covering relations (edges of the Hasse diagram).
inline Json lattice_to_json(const SubgroupLattice& lattice) {
    Json subs = Json::array();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const Subgroup& s = lattice.subgroup(i);
        subs.push_back(Json{{"index", i}, {"size", s.size}, {"class", s.iso_type.str()}});
    }
    Json covers = Json::array();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        std::vector<std::size_t> supers;
        for (std::size_t j = 0; j < lattice.size(); ++j)
            if (j != i && lattice.contains(i, j)) supers.push_back(j);
        for (std::size_t j : supers) {
            bool minimal = true;
            for (std::size_t k : supers)
                if (k != j && lattice.contains(k, j)) { minimal = false; break; }
            if (minimal) covers.push_back(Json::array({i, j}));
        }
    }
    return Json{{"group", lattice.group().shape().str()},
                {"order", lattice.group().order()},
                {"subgroups", subs},
                {"covers", covers}};
}

// Minimal CSV quoting: wrap fields containing commas or quotes.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace ellpos
