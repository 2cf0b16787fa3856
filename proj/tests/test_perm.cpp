#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "s8inv/perm.hpp"

using namespace s8inv;

namespace {

Perm random_perm(std::size_t n, std::mt19937& rng) {
    std::vector<std::uint8_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    return Perm(v);
}

// Plain BFS closure over all products, independent of PermGroup.
std::size_t naive_order(const std::vector<Perm>& gens, std::size_t n) {
    std::set<Perm> seen{Perm::identity(n)};
    std::vector<Perm> frontier{Perm::identity(n)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier)
            for (const auto& g : gens)
                if (seen.insert(g * p).second) next.push_back(g * p);
        frontier.swap(next);
    }
    return seen.size();
}

}  // namespace

TEST_CASE("composition applies the right factor first") {
    Perm g = parse_cycles("(1,2)", 3), h = parse_cycles("(2,3)", 3);
    CHECK((g * h)(2) == 3);
    CHECK((g * h)(3) == 1);
    CHECK(parse_cycles("(1,2)(2,3)", 3) == g * h);
    CHECK((g * h).to_cycle_string() == "(1,2,3)");
}

TEST_CASE("group laws on random permutations") {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        Perm a = random_perm(8, rng), b = random_perm(8, rng), c = random_perm(8, rng);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE((a * a.inverse()).is_identity());
        REQUIRE((a * b).inverse() == b.inverse() * a.inverse());
        REQUIRE(a.pow(long(a.order())).is_identity());
        REQUIRE(a.pow(-1) == a.inverse());
        REQUIRE(parse_cycles(a.to_cycle_string(), 8) == a);
    }
}

TEST_CASE("perm_act is a left action") {
    std::mt19937 rng(4);
    auto t = make_table("x", {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"});
    std::vector<Term> terms;
    for (int k = 0; k < 4; ++k) {
        Exponents e(8);
        for (std::size_t i = 0; i < 8; ++i) e[i] = std::uint16_t((i * 3 + k * 5) % 4);
        terms.push_back({e, Scalar::from_int(FieldTag::Q, k + 1)});
    }
    Poly f = Poly::from_terms(t, FieldTag::Q, terms);
    for (int i = 0; i < 200; ++i) {
        Perm g = random_perm(8, rng), h = random_perm(8, rng);
        REQUIRE(perm_act(g * h, f) == perm_act(g, perm_act(h, f)));
    }
    Perm g = parse_cycles("(1,2,3)", 8);
    CHECK(perm_act(g, Poly::variable(t, FieldTag::Q, 0)) == Poly::variable(t, FieldTag::Q, 1));
}

TEST_CASE("catalog orders match an independent closure") {
    REQUIRE(catalog().size() == 48);
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        auto g = catalog_group(e);
        CHECK(g.order() == e.expected_order);
        CHECK(naive_order(g.generators(), 8) == g.order());
        CHECK(is_transitive(g));
    }
    CHECK(catalog_group(*catalog_lookup("G48")).order() == 1344);
    CHECK_FALSE(catalog_lookup("G49").has_value());
}

TEST_CASE("corrected generator lists") {
    auto e = *catalog_lookup("G43");
    REQUIRE_FALSE(e.printed_generators.empty());
    std::vector<Perm> printed;
    for (const auto& s : e.printed_generators) printed.push_back(parse_perm_expr(s, 8, catalog_elements()));
    CHECK(PermGroup(8, printed).order() == 40320);
    auto g43 = catalog_group(e);
    CHECK(g43.order() == 336);
    CHECK(catalog_group(*catalog_lookup("G37")).is_subgroup_of(g43));
}

TEST_CASE("wreath products") {
    PermGroup c2(2, {parse_cycles("(1,2)", 2)});
    PermGroup c4(4, {parse_cycles("(1,2,3,4)", 4)});
    PermGroup s4(4, {parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)});
    auto w = wreath_product(c2, c4, {{1, 5}, {2, 6}, {3, 7}, {4, 8}});
    CHECK(w.order() == 64);
    CHECK(is_transitive(w));
    auto big = wreath_product(s4, c2, {{1, 2, 3, 4}, {5, 6, 7, 8}});
    CHECK(big.order() == 1152);
    auto g47 = catalog_group(*catalog_lookup("G47"));
    auto s = find_conjugator(big, g47);
    REQUIRE(s.has_value());
    for (const auto& x : big.generators()) CHECK(g47.contains(*s * x * s->inverse()));
}

TEST_CASE("normality and orbits") {
    PermGroup s4(4, {parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)});
    PermGroup v4(4, {parse_cycles("(1,2)(3,4)", 4), parse_cycles("(1,3)(2,4)", 4)});
    PermGroup c2(4, {parse_cycles("(1,2)", 4)});
    CHECK(is_normal(v4, s4));
    CHECK_FALSE(is_normal(c2, s4));
    CHECK(orbit(c2, 1) == std::vector<std::size_t>{1, 2});
    CHECK_FALSE(is_transitive(c2));
}

TEST_CASE("perm expressions") {
    const auto& env = catalog_elements();
    Perm a = parse_perm_expr("kappa (5,6)(7,8)", 8, env);
    CHECK(a == env.at("kappa") * parse_cycles("(5,6)(7,8)", 8));
    Perm b = parse_perm_expr("Phi^-1 Phi", 8, env);
    CHECK(b.is_identity());
    CHECK_THROWS(parse_perm_expr("nosuch", 8, env));
    CHECK_THROWS(parse_cycles("(1,9)", 8));
    CHECK_THROWS(parse_cycles("(1,2,1)", 8));
}

TEST_CASE("closure cap") {
    PermGroup s8(8, {parse_cycles("(1,2,3,4,5,6,7,8)", 8), parse_cycles("(1,2)", 8)});
    CHECK(s8.order() == 40320);
    CHECK_THROWS_AS(PermGroup(8, s8.generators(), 1000), GroupTooLarge);
}
