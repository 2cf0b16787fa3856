#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "s8inv/expr.hpp"
#include "s8inv/scalar.hpp"

using namespace s8inv;

namespace {

const FieldTag kFields[] = {FieldTag::Q, FieldTag::F2, FieldTag::Qz3, FieldTag::F4};

Scalar random_scalar(FieldTag f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7), bit(0, 1);
    switch (f) {
    case FieldTag::Q: return Scalar::from_rational(f, mpq_class(num(rng), den(rng)));
    case FieldTag::F2: return Scalar::from_int(f, bit(rng));
    case FieldTag::Qz3: return Scalar::from_pair(f, mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    case FieldTag::F4: return Scalar::from_pair(f, bit(rng), bit(rng));
    }
    return {};
}

}  // namespace

TEST_CASE("field tags parse and report characteristic") {
    CHECK(parse_field_tag("Q") == FieldTag::Q);
    CHECK(parse_field_tag("F4") == FieldTag::F4);
    CHECK_FALSE(parse_field_tag("F3").has_value());
    CHECK(characteristic(FieldTag::F2) == 2);
    CHECK(characteristic(FieldTag::Qz3) == 0);
    CHECK(has_zeta3(FieldTag::F4));
    CHECK_FALSE(has_zeta3(FieldTag::F2));
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(20240611);
    for (FieldTag f : kFields) {
        CAPTURE(field_name(f));
        const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
        for (int i = 0; i < 1000; ++i) {
            Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + zero == a);
            REQUIRE(a * one == a);
            REQUIRE(a - a == zero);
            REQUIRE(a + (-a) == zero);
            if (!a.is_zero()) {
                REQUIRE(a * a.inverse() == one);
                REQUIRE((b / a) * a == b);
            }
            // conjugation is a ring automorphism of order dividing 2
            REQUIRE((a * b).conjugate() == a.conjugate() * b.conjugate());
            REQUIRE((a + b).conjugate() == a.conjugate() + b.conjugate());
            REQUIRE(a.conjugate().conjugate() == a);
            if (a == b) REQUIRE(a.hash() == b.hash());
        }
    }
}

TEST_CASE("division by zero throws") {
    for (FieldTag f : kFields) CHECK_THROWS_AS(Scalar::zero(f).inverse(), FieldError);
}

TEST_CASE("mixing fields throws") {
    CHECK_THROWS_AS(Scalar::one(FieldTag::Q) + Scalar::one(FieldTag::F2), FieldError);
}

TEST_CASE("zeta3 relations") {
    for (FieldTag f : {FieldTag::Qz3, FieldTag::F4}) {
        CAPTURE(field_name(f));
        Scalar z = Scalar::zeta3(f), one = Scalar::one(f);
        CHECK(z.pow(3) == one);
        CHECK_FALSE(z == one);
        CHECK(one + z + z * z == Scalar::zero(f));
        CHECK(z.conjugate() == z * z);
        CHECK(z.pow(-1) == z * z);
    }
    CHECK_THROWS_AS(Scalar::zeta3(FieldTag::Q), FieldError);
    CHECK_THROWS_AS(Scalar::zeta3(FieldTag::F2), FieldError);
}

TEST_CASE("characteristic two") {
    for (FieldTag f : {FieldTag::F2, FieldTag::F4}) {
        Scalar one = Scalar::one(f);
        CHECK((one + one).is_zero());
        CHECK(-one == one);
        CHECK(Scalar::from_int(f, 7) == one);
        CHECK(Scalar::from_int(f, -4).is_zero());
    }
    // F4 has exactly four elements, all nonzero ones of order dividing 3
    std::vector<Scalar> f4;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) f4.push_back(Scalar::from_pair(FieldTag::F4, a, b));
    for (const auto& x : f4)
        if (!x.is_zero()) CHECK(x.pow(3).is_one());
}

TEST_CASE("printed scalars parse back") {
    std::mt19937 rng(7);
    auto none = make_table("none", {});
    for (FieldTag f : kFields) {
        for (int i = 0; i < 200; ++i) {
            Scalar a = random_scalar(f, rng);
            RatFunc back = parse_expr(a.to_string(), none, f);
            REQUIRE(back.equals(RatFunc::constant(none, a)));
        }
    }
}
