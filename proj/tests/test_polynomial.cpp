#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "s8inv/expr.hpp"
#include "s8inv/polynomial.hpp"

using namespace s8inv;

namespace {

const FieldTag kFields[] = {FieldTag::Q, FieldTag::F2, FieldTag::Qz3, FieldTag::F4};

Scalar random_coef(FieldTag f, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-4, 4), bit(0, 1);
    switch (f) {
    case FieldTag::Q: return Scalar::from_int(f, d(rng));
    case FieldTag::F2: return Scalar::from_int(f, bit(rng));
    case FieldTag::Qz3: return Scalar::from_pair(f, d(rng), d(rng));
    case FieldTag::F4: return Scalar::from_pair(f, bit(rng), bit(rng));
    }
    return {};
}

Poly random_poly(const VarTablePtr& t, FieldTag f, std::mt19937& rng, int terms = 4, int maxdeg = 3) {
    std::uniform_int_distribution<int> e(0, maxdeg);
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
        Exponents ex(t->size());
        for (auto& x : ex) x = std::uint16_t(e(rng));
        ts.push_back({ex, random_coef(f, rng)});
    }
    return Poly::from_terms(t, f, ts);
}

Poly random_nonzero(const VarTablePtr& t, FieldTag f, std::mt19937& rng) {
    for (;;) {
        Poly p = random_poly(t, f, rng, 3, 2);
        if (!p.is_zero()) return p;
    }
}

// Points in Q or Qz3 have large support; over F2 and F4 evaluation is too
// coarse to separate functions, so the homomorphism tests use char 0 points.
std::vector<Scalar> random_point(const VarTablePtr& t, FieldTag f, std::mt19937& rng) {
    std::vector<Scalar> pt;
    std::uniform_int_distribution<long> d(-20, 20);
    for (std::size_t i = 0; i < t->size(); ++i)
        pt.push_back(f == FieldTag::Qz3 ? Scalar::from_pair(f, d(rng), d(rng)) : Scalar::from_int(f, d(rng)));
    return pt;
}

}  // namespace

TEST_CASE("ring laws hold formally") {
    std::mt19937 rng(11);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (FieldTag f : kFields) {
        CAPTURE(field_name(f));
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(t, f, rng), b = random_poly(t, f, rng), c = random_poly(t, f, rng);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a - a).is_zero());
            REQUIRE(a.pow(3) == a * a * a);
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(12);
    auto t = make_table("x", {"x1", "x2", "x3", "x4"});
    for (FieldTag f : {FieldTag::Q, FieldTag::Qz3}) {
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(t, f, rng), b = random_poly(t, f, rng);
            auto pt = random_point(t, f, rng);
            REQUIRE((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
            REQUIRE((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
        }
    }
}

TEST_CASE("terms are sorted by decreasing graded lex order") {
    std::mt19937 rng(13);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (int i = 0; i < 100; ++i) {
        Poly p = random_poly(t, FieldTag::Q, rng, 8);
        for (std::size_t k = 1; k < p.size(); ++k) REQUIRE(grlex_less(p.terms()[k].exps, p.terms()[k - 1].exps));
        for (const auto& term : p.terms()) REQUIRE_FALSE(term.coef.is_zero());
    }
}

TEST_CASE("exact division recovers the factor") {
    std::mt19937 rng(14);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (FieldTag f : kFields) {
        for (int i = 0; i < 100; ++i) {
            Poly a = random_poly(t, f, rng), b = random_nonzero(t, f, rng);
            auto q = (a * b).divide_exact(b);
            REQUIRE(q.has_value());
            REQUIRE(*q == a);
        }
    }
    auto x = Poly::variable(t, FieldTag::Q, 0), y = Poly::variable(t, FieldTag::Q, 1);
    CHECK_FALSE((x * x + y).divide_exact(x).has_value());
}

TEST_CASE("ratfunc equality is an equivalence compatible with scaling") {
    std::mt19937 rng(15);
    auto t = make_table("x", {"x1", "x2"});
    for (FieldTag f : kFields) {
        CAPTURE(field_name(f));
        for (int i = 0; i < 100; ++i) {
            Poly n = random_poly(t, f, rng), d = random_nonzero(t, f, rng), c = random_nonzero(t, f, rng);
            RatFunc a(n, d), b(n * c, d * c);
            REQUIRE(ratfunc_eq(a, a));
            REQUIRE(ratfunc_eq(a, b));
            REQUIRE(ratfunc_eq(b, a));
            RatFunc e(n * c * c, d * c * c);
            REQUIRE(ratfunc_eq(b, e));
            REQUIRE(ratfunc_eq(a, e));
            REQUIRE((a - b).is_zero());
            if (!a.is_zero()) REQUIRE(ratfunc_eq(a * a.inverse(), RatFunc::one(t, f)));
        }
    }
}

TEST_CASE("rational function field operations") {
    std::mt19937 rng(16);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (FieldTag f : kFields) {
        for (int i = 0; i < 100; ++i) {
            RatFunc a(random_poly(t, f, rng), random_nonzero(t, f, rng));
            RatFunc b(random_poly(t, f, rng), random_nonzero(t, f, rng));
            RatFunc c(random_nonzero(t, f, rng), random_nonzero(t, f, rng));
            REQUIRE((a + b) * c == a * c + b * c);
            REQUIRE((a / c) * c == a);
            if (!a.is_zero()) REQUIRE(a.pow(-2) * a.pow(2) == RatFunc::one(t, f));
        }
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937 rng(17);
    auto src = make_table("y", {"y1", "y2", "y3"});
    auto dst = make_table("x", {"x1", "x2", "x3", "x4"});
    for (FieldTag f : kFields) {
        CAPTURE(field_name(f));
        for (int i = 0; i < 50; ++i) {
            std::vector<RatFunc> images;
            for (std::size_t k = 0; k < 3; ++k)
                images.emplace_back(random_poly(dst, f, rng, 2, 2),
                                    Poly::variable(dst, f, k) + Poly::constant(dst, Scalar::one(f)));
            Substitution s(src, dst, images);
            RatFunc a(random_poly(src, f, rng, 3, 2)), b(random_poly(src, f, rng, 3, 2));
            REQUIRE(substitute(a * b, s) == substitute(a, s) * substitute(b, s));
            REQUIRE(substitute(a + b, s) == substitute(a, s) + substitute(b, s));
            REQUIRE(substitute(RatFunc::variable(src, f, 1), s) == images[1]);
        }
    }
}

TEST_CASE("laurent detection") {
    auto t = make_table("z", {"z1", "z2", "z3"});
    RatFunc f = parse_expr("-2*z1^2/(z2*z3^3)", t, FieldTag::Q);
    auto l = f.as_laurent();
    REQUIRE(l.has_value());
    CHECK(l->coef == Scalar::from_int(FieldTag::Q, -2));
    CHECK(l->exps == std::vector<long>{2, -1, -3});
    CHECK_FALSE(parse_expr("z1 + z2", t, FieldTag::Q).as_laurent().has_value());
}

TEST_CASE("printed rational functions parse back") {
    std::mt19937 rng(18);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (FieldTag f : kFields) {
        for (int i = 0; i < 100; ++i) {
            RatFunc a(random_poly(t, f, rng), random_nonzero(t, f, rng));
            CAPTURE(a.to_string());
            CAPTURE(field_name(f));
            REQUIRE(parse_expr(a.to_string(), t, f) == a);
        }
    }
}

TEST_CASE("characteristic two squaring is additive") {
    std::mt19937 rng(19);
    auto t = make_table("x", {"x1", "x2", "x3"});
    for (FieldTag f : {FieldTag::F2, FieldTag::F4}) {
        for (int i = 0; i < 100; ++i) {
            Poly a = random_poly(t, f, rng), b = random_poly(t, f, rng);
            REQUIRE((a + b).pow(2) == a.pow(2) + b.pow(2));
        }
    }
}

TEST_CASE("mismatched tables are rejected") {
    auto t = make_table("x", {"x1"});
    auto u = make_table("y", {"y1", "y2"});
    CHECK_THROWS(Poly::variable(t, FieldTag::Q, 0) + Poly::variable(u, FieldTag::Q, 0));
}
