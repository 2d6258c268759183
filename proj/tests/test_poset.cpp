#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ellpos/poset.hpp"

using namespace ellpos;

namespace {

std::vector<std::string> names(const std::vector<GroupClass>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

std::string chain_str(const Chain& chain) {
    std::string out = "{";
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        if (i) out += ',';
        out += chain.links[i].str();
    }
    return out + "}";
}

} // namespace

TEST_CASE("enumerate_classes lists all classes up to an order bound") {
    auto classes = enumerate_classes(3, 3);
    CHECK(names(classes) ==
          std::vector<std::string>{"[]", "[1]", "[2]", "[1,1]", "[3]", "[2,1]", "[1,1,1]"});

    // cumulative partition counts p(0) + ... + p(M)
    const std::size_t expected[] = {1, 2, 4, 7, 12, 19, 30, 45, 67};
    for (unsigned m = 0; m <= 8; ++m)
        CHECK(enumerate_classes(3, m).size() == expected[m]);
    CHECK(enumerate_classes(5, 5).size() == 19);
}

TEST_CASE("enumerate_classes output is strictly sorted and duplicate-free") {
    auto classes = enumerate_classes(3, 6);
    for (std::size_t i = 1; i < classes.size(); ++i) {
        CHECK(class_order_less(classes[i - 1], classes[i]));
        CHECK_FALSE(classes[i - 1] == classes[i]);
    }
}

TEST_CASE("embedding is a partial order on classes of order up to ell^6") {
    for (std::uint64_t ell : {3ull, 5ull}) {
        auto classes = enumerate_classes(ell, 6);
        for (const auto& a : classes) {
            CHECK(embeds(a, a));
            for (const auto& b : classes) {
                if (embeds(a, b) && embeds(b, a)) CHECK(a == b);
                for (const auto& c : classes)
                    if (embeds(a, b) && embeds(b, c)) CHECK(embeds(a, c));
            }
        }
    }
}

TEST_CASE("enumerate_interval matches a brute-force filter") {
    auto classes = enumerate_classes(3, 6);
    std::size_t checked = 0;
    for (const auto& a : classes) {
        for (const auto& c : classes) {
            Interval iv = enumerate_interval(a, c);
            std::vector<GroupClass> brute;
            for (const auto& b : classes)
                if (embeds(a, b) && embeds(b, c)) brute.push_back(b);
            // brute already sorted because classes is
            CHECK(iv.members == brute);
            checked += 1;
        }
    }
    CHECK(checked == classes.size() * classes.size());
}

TEST_CASE("enumerate_interval worked example") {
    Interval iv = enumerate_interval(GroupClass(3, {1}), GroupClass(3, {2, 1}));
    CHECK(names(iv.members) == std::vector<std::string>{"[1]", "[2]", "[1,1]", "[2,1]"});

    Interval iv2 = enumerate_interval(GroupClass(3), GroupClass(3, {1, 1}));
    CHECK(names(iv2.members) == std::vector<std::string>{"[]", "[1]", "[1,1]"});

    Interval empty = enumerate_interval(GroupClass(3, {2}), GroupClass(3, {1, 1}));
    CHECK(empty.members.empty());

    Interval point = enumerate_interval(GroupClass(3, {2}), GroupClass(3, {2}));
    CHECK(names(point.members) == std::vector<std::string>{"[2]"});
}

TEST_CASE("chain streaming yields exactly the worked example") {
    std::vector<std::string> seen;
    for_each_chain(GroupClass(3, {1}), GroupClass(3, {2, 1}), [&](const Chain& chain) {
        CHECK(chain.valid());
        CHECK(chain.base.str() == "[1]");
        CHECK(chain.links.back().str() == "[2,1]");
        seen.push_back(chain_str(chain));
    });
    CHECK(seen == std::vector<std::string>{"{[2,1]}", "{[2],[2,1]}", "{[1,1],[2,1]}"});
}

TEST_CASE("no chains from a class to itself or an incomparable class") {
    std::size_t count = 0;
    for_each_chain(GroupClass(3, {1}), GroupClass(3, {1}), [&](const Chain&) { ++count; });
    for_each_chain(GroupClass(3, {2}), GroupClass(3, {1, 1}), [&](const Chain&) { ++count; });
    CHECK(count == 0);
}

TEST_CASE("chain multiset matches brute-force subsets of the open interval") {
    auto classes = enumerate_classes(3, 5);
    for (const auto& a : classes) {
        for (const auto& c : classes) {
            if (a == c || !embeds(a, c)) continue;
            Interval iv = enumerate_interval(a, c);
            std::vector<GroupClass> open;
            for (const auto& m : iv.members)
                if (m != a && m != c) open.push_back(m);
            if (open.size() > 12) continue;

            // brute force: every subset of the open interval that is totally
            // ordered gives one chain (together with C on top)
            std::set<std::string> brute;
            for (std::uint64_t mask = 0; mask < (1ull << open.size()); ++mask) {
                std::vector<GroupClass> links;
                for (std::size_t i = 0; i < open.size(); ++i)
                    if (mask & (1ull << i)) links.push_back(open[i]);
                std::sort(links.begin(), links.end(), class_order_less);
                bool ordered = true;
                for (std::size_t i = 1; i < links.size(); ++i)
                    if (!embeds(links[i - 1], links[i]) || links[i - 1] == links[i]) ordered = false;
                if (!ordered) continue;
                links.push_back(c);
                brute.insert(chain_str(Chain{a, links}));
            }

            std::set<std::string> streamed;
            std::size_t total = 0;
            for_each_chain(a, c, [&](const Chain& chain) {
                CHECK(chain.valid());
                streamed.insert(chain_str(chain));
                ++total;
            });
            CHECK(total == streamed.size()); // no duplicates
            CHECK(streamed == brute);
        }
    }
}

TEST_CASE("enumerate_chains materialises the stream and honours its limit") {
    auto chains = enumerate_chains(GroupClass(3, {1}), GroupClass(3, {2, 1}));
    CHECK(chains.size() == 3);
    CHECK_THROWS_AS(enumerate_chains(GroupClass(3), GroupClass(3, {1, 1, 1}), 2), resource_error);
}

TEST_CASE("chain validity rejects malformed chains") {
    GroupClass a(3, {1}), c(3, {2, 1});
    CHECK_FALSE(Chain{a, {}}.valid());
    CHECK_FALSE(Chain{a, {a}}.valid());                    // not strictly increasing
    CHECK_FALSE(Chain{c, {a}}.valid());                    // decreasing
    CHECK_FALSE(Chain{a, {GroupClass(3, {2}), a}}.valid()); // drops back down
    CHECK(Chain{a, {GroupClass(3, {2}), c}}.valid());
}

TEST_CASE("elementary cokernel band predicate") {
    auto p = [](const char* a, const char* c) {
        return elementary_cokernel_embeddable(GroupClass::parse(3, a), GroupClass::parse(3, c));
    };
    CHECK(p("[]", "[]"));
    CHECK(p("[]", "[1]"));
    CHECK_FALSE(p("[]", "[2]"));
    CHECK(p("[1]", "[2]"));
    CHECK(p("[1]", "[1]"));
    CHECK(p("[1]", "[1,1]"));
    CHECK(p("[2]", "[2,1]"));
    CHECK(p("[1,1]", "[2,1]"));
    CHECK(p("[1]", "[2,1]"));
    CHECK_FALSE(p("[1]", "[3]"));
    CHECK_FALSE(p("[1,1]", "[3,1]"));
    CHECK_FALSE(p("[3]", "[2,1]")); // does not even embed
    CHECK_FALSE(p("[1,1]", "[1]"));
    CHECK(p("[2,1]", "[3,2,1]"));
    CHECK_FALSE(p("[2,1]", "[3,3,1]"));
}
