#include <catch2/catch_amalgamated.hpp>

#include "ellpos/group_class.hpp"

using namespace ellpos;

TEST_CASE("classes are stored in canonical form") {
    GroupClass a(3, {1, 2, 0, 1});
    CHECK(a.parts() == std::vector<unsigned>{2, 1, 1});
    CHECK(a.str() == "[2,1,1]");
    CHECK(a.rank() == 3);
    CHECK(a.order_exponent() == 4);
    CHECK(a.exponent_log() == 2);
    CHECK(a.order() == 81);
    CHECK(a.exponent() == 9);

    GroupClass trivial(3);
    CHECK(trivial.trivial());
    CHECK(trivial.str() == "[]");
    CHECK(trivial.order() == 1);
    CHECK(trivial.exponent() == 1);
    CHECK(trivial.exponent_log() == 0);

    CHECK(a.part_or_zero(1) == 2);
    CHECK(a.part_or_zero(3) == 1);
    CHECK(a.part_or_zero(4) == 0);
}

TEST_CASE("ell must be an odd prime at least 3") {
    for (std::uint64_t ell : {0ull, 1ull, 2ull, 4ull, 9ull, 15ull, 21ull, 1000000ull})
        CHECK_THROWS_AS(GroupClass(ell), std::invalid_argument);
    for (std::uint64_t ell : {3ull, 5ull, 7ull, 11ull, 101ull, 104729ull})
        CHECK_NOTHROW(GroupClass(ell));
}

TEST_CASE("partition parsing round trips and normalises") {
    CHECK(GroupClass::parse(3, "[2,1]").str() == "[2,1]");
    CHECK(GroupClass::parse(3, "[]").str() == "[]");
    CHECK(GroupClass::parse(3, " [ 2 , 1 ] ").str() == "[2,1]");
    CHECK(GroupClass::parse(3, "[1,2]").str() == "[2,1]");
    CHECK(GroupClass::parse(3, "[0]").str() == "[]");
    CHECK(GroupClass::parse(3, "[3,0,3]").str() == "[3,3]");

    for (const char* bad : {"2,1", "[a]", "[1,]", "[,1]", "[-1]", "[", "]", "", "[1 2]", "[1;2]"})
        CHECK_THROWS_AS(GroupClass::parse(3, bad), std::invalid_argument);
}

TEST_CASE("equality is structural") {
    CHECK(GroupClass(3, {2, 1}) == GroupClass::parse(3, "[2,1]"));
    CHECK(GroupClass(3, {2, 1}) != GroupClass(3, {2}));
    CHECK(GroupClass(3, {1}) != GroupClass(5, {1}));
}

TEST_CASE("embedding order on small examples") {
    GroupClass t(3), one(3, {1}), two(3, {2}), oneone(3, {1, 1}), twoone(3, {2, 1});
    CHECK(embeds(t, t));
    CHECK(embeds(t, twoone));
    CHECK(embeds(one, two));
    CHECK(embeds(one, oneone));
    CHECK(embeds(one, twoone));
    CHECK(embeds(oneone, twoone));
    CHECK(embeds(two, twoone));
    CHECK_FALSE(embeds(two, oneone));
    CHECK_FALSE(embeds(oneone, two));
    CHECK_FALSE(embeds(twoone, oneone));
    CHECK_FALSE(embeds(one, t));
    CHECK_THROWS_AS(embeds(GroupClass(3, {1}), GroupClass(5, {1})), std::invalid_argument);
}

TEST_CASE("rank_prefix counts parts of at least the given size") {
    GroupClass a(3, {2, 2, 1});
    CHECK(rank_prefix(a, 1) == 3);
    CHECK(rank_prefix(a, 2) == 2);
    CHECK(rank_prefix(a, 3) == 0);
    CHECK(rank_prefix(GroupClass(3), 1) == 0);
    CHECK_THROWS_AS(rank_prefix(a, 0), std::invalid_argument);
}

TEST_CASE("add_elementary appends unit parts") {
    GroupClass a(3, {2});
    CHECK(add_elementary(a, 2).str() == "[2,1,1]");
    CHECK(add_elementary(a, 0) == a);
    CHECK(add_elementary(GroupClass(3), 3).str() == "[1,1,1]");
}

TEST_CASE("insert_part keeps canonical order") {
    GroupClass a(3, {2, 1});
    CHECK(insert_part(a, 3).str() == "[3,2,1]");
    CHECK(insert_part(a, 1).str() == "[2,1,1]");
    CHECK(insert_part(a, 0) == a);
}

TEST_CASE("mod_power_quotient caps parts") {
    GroupClass b(3, {3, 2, 1});
    CHECK(mod_power_quotient(b, 2).str() == "[2,2,1]");
    CHECK(mod_power_quotient(b, 1).str() == "[1,1,1]");
    CHECK(mod_power_quotient(b, 0).str() == "[]");
    CHECK(mod_power_quotient(b, 5) == b);
}

TEST_CASE("class_order_less sorts by order then reverse-lexicographically") {
    GroupClass t(3), one(3, {1}), two(3, {2}), oneone(3, {1, 1}), three(3, {3}), twoone(3, {2, 1}),
        ones3(3, {1, 1, 1});
    CHECK(class_order_less(t, one));
    CHECK(class_order_less(two, oneone));
    CHECK(class_order_less(three, twoone));
    CHECK(class_order_less(twoone, ones3));
    CHECK(class_order_less(oneone, three));
    CHECK_FALSE(class_order_less(one, one));
    CHECK_FALSE(class_order_less(oneone, two));
}
