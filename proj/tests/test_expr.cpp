#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "s8inv/expr.hpp"
#include "s8inv/suite.hpp"

using namespace s8inv;

TEST_CASE("every suite expression survives format and reparse") {
    std::size_t total = 0;
    for (const auto& name : list_suites()) {
        CAPTURE(name);
        auto doc = parse_suite(suite_source(name));
        for (const auto& text : suite_expressions(doc)) {
            CAPTURE(text);
            auto tree = parse_expr_ast(text);
            auto again = parse_expr_ast(format_expr(*tree));
            REQUIRE(same_tree(*tree, *again));
            ++total;
        }
    }
    CHECK(total > 500);
}

TEST_CASE("precedence") {
    auto t = make_table("x", {"x1", "x2", "x3"});
    auto q = [&](const char* s) { return parse_expr(s, t, FieldTag::Q); };
    CHECK(q("-x1^2") == -(q("x1") * q("x1")));
    CHECK(q("x1 - x2 - x3") == q("x1 - (x2 + x3)"));
    CHECK(q("x1/x2/x3") == q("x1/(x2*x3)"));
    CHECK(q("x1 + x2*x3") == q("x1 + (x2*x3)"));
    CHECK(q("x1^-2") == q("1/(x1*x1)"));
    CHECK(q("2*x1/3") == q("2/3*x1"));
    CHECK(q("(x1+x2)^2") == q("x1^2 + 2*x1*x2 + x2^2"));
}

TEST_CASE("zeta3 in the expression language") {
    auto t = make_table("x", {"x1"});
    for (FieldTag f : {FieldTag::Qz3, FieldTag::F4}) {
        CHECK(parse_expr("zeta3^3", t, f) == parse_expr("1", t, f));
        CHECK(parse_expr("1 + zeta3 + zeta3^2", t, f).is_zero());
    }
    CHECK_THROWS(parse_expr("zeta3", t, FieldTag::Q));
}

TEST_CASE("qualified names are kept whole in the tree") {
    auto tree = parse_expr_ast("w.w1 * w2");
    std::vector<std::string> out;
    collect_variables(*tree, out);
    CHECK(out == std::vector<std::string>{"w.w1", "w2"});
    auto t = make_table("w", {"w1", "w2"});
    CHECK_THROWS(parse_expr("w.w1", t, FieldTag::Q));
}

TEST_CASE("parse errors report the offset") {
    auto offset = [](const char* s) -> std::size_t {
        try {
            parse_expr_ast(s);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::size_t(-1);
    };
    CHECK(offset("x1 + ") == 5);
    CHECK(offset("(x1 + x2") == 8);
    CHECK(offset("x1 $ x2") == 3);
    CHECK(offset("x1^y") == 3);
    auto t = make_table("x", {"x1"});
    CHECK_THROWS(parse_expr("x9", t, FieldTag::Q));
    CHECK_THROWS(parse_expr("x1/0", t, FieldTag::Q));
}

TEST_CASE("collect_variables lists distinct leaves in order") {
    std::vector<std::string> out;
    collect_variables(*parse_expr_ast("z1^2/(z2*z3) - z1"), out);
    CHECK(out == std::vector<std::string>{"z1", "z2", "z3"});
}
