#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s8inv/actions.hpp"
#include "s8inv/expr.hpp"

using namespace s8inv;

namespace {

std::vector<RatFunc> defs(const std::vector<std::string>& texts, const VarTablePtr& over, FieldTag f) {
    std::vector<RatFunc> out;
    for (const auto& t : texts) out.push_back(parse_expr(t, over, f));
    return out;
}

GroupElement el(const char* cycles, std::size_t n, bool conj = false) { return {parse_cycles(cycles, n), conj}; }

std::vector<GroupElement> s4_elements() {
    PermGroup s4(4, {parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)});
    std::vector<GroupElement> out;
    for (const auto& p : s4.elements()) out.push_back({p, false});
    return out;
}

// x1..x4 with the ratios y1 = x1/x2, y2 = x2/x3, y3 = x3/x4 above it
struct RatioTower {
    Tower tower{FieldTag::Q};
    int x, y;
    RatioTower() {
        auto xv = make_table("x", {"x1", "x2", "x3", "x4"});
        x = tower.add_root(xv);
        y = tower.add_derived(make_table("y", {"y1", "y2", "y3"}), x,
                              defs({"x1/x2", "x2/x3", "x3/x4"}, xv, FieldTag::Q));
    }
};

}  // namespace

TEST_CASE("monomial action is a homomorphism") {
    RatioTower rt;
    REQUIRE(rt.tower.is_independent(rt.y));
    auto g = s4_elements();
    std::map<GroupElement, IntMatrix> a;
    for (const auto& e : g) {
        auto m = rt.tower.monomial_action(rt.y, e);
        REQUIRE(m.has_value());
        CHECK(m->is_pure());
        a[e] = m->matrix;
    }
    for (const auto& e : g)
        for (const auto& h : g) REQUIRE(a.at(e * h) == a.at(e) * a.at(h));
    CHECK(a.at(g.front()).is_identity());
}

TEST_CASE("act is a left action through the tower") {
    RatioTower rt;
    auto yv = rt.tower.vars(rt.y);
    Tower::Value v{parse_expr("y1^2*y3 + 3*y2/(y1 + y3)", yv, FieldTag::Q), rt.y};
    auto g = s4_elements();
    for (const auto& e : g)
        for (const auto& h : g) REQUIRE(rt.tower.equal(rt.tower.act(e * h, v), rt.tower.act(e, rt.tower.act(h, v))));
}

TEST_CASE("equality descends through dependent tables") {
    RatioTower rt;
    auto yv = rt.tower.vars(rt.y);
    int w = rt.tower.add_derived(make_table("w", {"w1", "w2"}), rt.y, defs({"y1*y2", "y1^2*y2^2"}, yv, FieldTag::Q));
    CHECK_FALSE(rt.tower.is_independent(w));
    auto wv = rt.tower.vars(w);
    Tower::Value w2{parse_expr("w2", wv, FieldTag::Q), w}, w1sq{parse_expr("w1^2", wv, FieldTag::Q), w};
    CHECK(rt.tower.equal(w2, w1sq));
    CHECK_FALSE(rt.tower.equal(rt.tower.variable(w, 0), rt.tower.variable(w, 1)));
    // values on different tables compare at their common ancestor
    Tower::Value x1x3{parse_expr("x1/x3", rt.tower.vars(rt.x), FieldTag::Q), rt.x};
    CHECK(rt.tower.equal(rt.tower.variable(w, 0), x1x3));
}

TEST_CASE("induced permutations of block sums") {
    Tower t(FieldTag::Q);
    auto xv = make_table("x", {"x1", "x2", "x3", "x4"});
    int x = t.add_root(xv);
    int s = t.add_derived(make_table("s", {"s1", "s2"}), x, defs({"x1 + x2", "x3 + x4"}, xv, FieldTag::Q));
    CHECK(t.induced_permutation(s, el("(1,2)", 4))->is_identity());
    CHECK(*t.induced_permutation(s, el("(1,3)(2,4)", 4)) == parse_cycles("(1,2)", 2));
    CHECK_FALSE(t.induced_permutation(s, el("(2,3)", 4)).has_value());
    CHECK(t.fixes_all(s, el("(1,2)(3,4)", 4)));
    // linear tables get their action from solving over the parent
    auto img = t.action_on(s, el("(1,4,2,3)", 4));
    REQUIRE(img.has_value());
    CHECK((*img)[0] == RatFunc::variable(t.vars(s), FieldTag::Q, 1));
}

TEST_CASE("the field automorphism acts on coefficients") {
    for (FieldTag f : {FieldTag::Qz3, FieldTag::F4}) {
        CAPTURE(field_name(f));
        Tower t(f);
        auto xv = make_table("x", {"x1", "x2", "x3"});
        int x = t.add_root(xv);
        int r = t.add_derived(make_table("r", {"r1", "r2"}), x,
                              defs({"x1 + zeta3*x2 + zeta3^2*x3", "x1 + zeta3^2*x2 + zeta3*x3"}, xv, f));
        GroupElement c = el("()", 3, true), swap = el("(2,3)", 3);
        CHECK(t.equal(t.act(c, t.definition(r, 0)), t.act(swap, t.definition(r, 0))));
        CHECK(*t.induced_permutation(r, c) == parse_cycles("(1,2)", 2));
        CHECK(t.fixes_all(r, c * swap));
        CHECK((c * c).perm.is_identity());
        CHECK_FALSE((c * c).conj);
        // a cyclic shift multiplies r1 by a cube root of unity
        auto m = t.monomial_action(r, el("(1,2,3)", 3));
        REQUIRE(m.has_value());
        CHECK(m->matrix.is_identity());
        CHECK_FALSE(m->is_pure());
    }
}

TEST_CASE("missing actions are reported") {
    Tower t(FieldTag::Q);
    auto xv = make_table("x", {"x1", "x2"});
    int x = t.add_root(xv);
    CHECK_THROWS_AS(t.act(el("(1,2,3)", 3), t.variable(x, 0)), ActionError);
    int q = t.add_derived(make_table("q", {"q1"}), x, defs({"x1 + x2^2"}, xv, FieldTag::Q));
    std::string why;
    CHECK_FALSE(t.monomial_action(q, el("(1,2)", 2), &why).has_value());
    CHECK_FALSE(why.empty());
    t.register_action(q, el("(1,2)", 2), {RatFunc::variable(t.vars(q), FieldTag::Q, 0)});
    CHECK(t.action_on(q, el("(1,2)", 2)).has_value());
}

TEST_CASE("linear solving over a field") {
    auto s = [](long v) { return Scalar::from_int(FieldTag::Q, v); };
    auto x = solve_linear({{s(1), s(1)}, {s(1), s(-1)}}, {s(3), s(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == s(2));
    CHECK((*x)[1] == s(1));
    CHECK_FALSE(solve_linear({{s(1), s(2)}, {s(2), s(4)}}, {s(1), s(2)}).has_value());
    CHECK(scalar_rank({{s(1), s(2)}, {s(2), s(4)}}) == 1);
}
