#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "s8inv/lattice.hpp"

using namespace s8inv;

namespace {

// Cofactor expansion along the first row.
mpz_class det_laplace(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    mpz_class total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0, kk = 0; k < n; ++k)
                if (k != c) minor.at(r - 1, kk++) = m.at(r, k);
        mpz_class term = m.at(0, c) * det_laplace(minor);
        total += (c % 2 ? -term : term);
    }
    return total;
}

IntMatrix random_matrix(std::size_t n, std::mt19937& rng, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = d(rng);
    return m;
}

const MatrixEnv& env() {
    static const MatrixEnv e = {
        {"sigma4A", parse_int_matrix("[[0,-1,0],[1,0,0],[0,0,1]]")},
        {"lambda1", parse_int_matrix("[[-1,0,0],[0,1,0],[0,0,-1]]")},
        {"a", parse_int_matrix("[[-1,0,0],[0,-1,0],[0,0,1]]")},
        {"b", parse_int_matrix("[[-1,0,0],[0,1,0],[0,0,-1]]")},
        {"c", parse_int_matrix("[[0,0,1],[1,0,0],[0,1,0]]")},
        {"d", parse_int_matrix("[[0,-1,0],[-1,0,0],[0,0,1]]")},
    };
    return e;
}

}  // namespace

TEST_CASE("bareiss agrees with cofactor expansion") {
    std::mt19937 rng(5);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int i = 0; i < 60; ++i) {
            IntMatrix m = random_matrix(n, rng);
            REQUIRE(det_bareiss(m) == det_laplace(m));
        }
    }
    // a zero pivot forces a row swap
    CHECK(det_bareiss(parse_int_matrix("[[0,1],[1,0]]")) == -1);
    CHECK(det_bareiss(parse_int_matrix("[[1,2],[2,4]]")) == 0);
}

TEST_CASE("multiplication, transpose and inverse") {
    std::mt19937 rng(6);
    for (int i = 0; i < 100; ++i) {
        IntMatrix a = random_matrix(4, rng), b = random_matrix(4, rng), c = random_matrix(4, rng);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE((a * b).transpose() == b.transpose() * a.transpose());
        REQUIRE(det_bareiss(a * b) == det_bareiss(a) * det_bareiss(b));
        REQUIRE(a.pow(3) == a * a * a);
    }
    IntMatrix u = parse_int_matrix("[[2,1],[1,1]]");
    REQUIRE(u.inverse_unimodular().has_value());
    CHECK((u * *u.inverse_unimodular()).is_identity());
    CHECK((u.pow(-2) * u.pow(2)).is_identity());
    CHECK_FALSE(parse_int_matrix("[[2,0],[0,1]]").inverse_unimodular().has_value());
}

TEST_CASE("printed matrices parse back") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        IntMatrix m = random_matrix(3, rng, -100, 100);
        REQUIRE(parse_int_matrix(m.to_string()) == m);
    }
    CHECK_THROWS(parse_int_matrix("[[1,2],[3]]"));
}

TEST_CASE("words in the named generators") {
    CHECK(matrix_word("(-sigma4A)^3", env(), 3) == parse_int_matrix("[[0,-1,0],[1,0,0],[0,0,-1]]"));
    CHECK(matrix_word("(-sigma4A)^4", env(), 3).is_identity());
    CHECK(matrix_word("d a", env(), 3) == parse_int_matrix("[[0,1,0],[1,0,0],[0,0,1]]"));
    CHECK(matrix_word("-lambda1 lambda1", env(), 3) == -IntMatrix::identity(3));
    CHECK_THROWS(matrix_word("", env(), 3));
    CHECK_THROWS(matrix_word("nope", env(), 3));
}

TEST_CASE("finite matrix groups") {
    auto m = [](const char* w) { return matrix_word(w, env(), 3); };
    CHECK(matrix_group_order({m("-sigma4A"), m("lambda1")}, 1000) == 8u);
    CHECK(matrix_group_order({m("-sigma4A"), m("-lambda1")}, 1000) == 8u);
    CHECK(matrix_group_order({m("a"), m("b"), m("c"), m("d")}, 1000) == 24u);
    // infinite order element exceeds any cap
    CHECK_FALSE(matrix_group_order({parse_int_matrix("[[1,1,0],[0,1,0],[0,0,1]]")}, 500).has_value());
    auto els = matrix_group_elements({m("c")}, 10);
    REQUIRE(els.has_value());
    CHECK(els->size() == 3);
}

TEST_CASE("solving in a row span") {
    auto s = solve_in_row_span({{1, 0, 1}, {0, 1, 1}}, {2, 3, 5});
    REQUIRE(s.has_value());
    CHECK((*s)[0] == 2);
    CHECK((*s)[1] == 3);
    auto h = solve_in_row_span({{2, 0}, {0, 4}}, {1, 1});
    REQUIRE(h.has_value());
    CHECK((*h)[0] == mpq_class(1, 2));
    CHECK((*h)[1] == mpq_class(1, 4));
    CHECK_FALSE(solve_in_row_span({{1, 0, 1}, {0, 1, 1}}, {1, 1, 1}).has_value());
    CHECK_FALSE(solve_in_row_span({{1, 1}, {2, 2}}, {1, 1}).has_value());

    std::mt19937 rng(8);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::vector<long>> rows(3, std::vector<long>(5));
        for (auto& r : rows)
            for (auto& x : r) x = d(rng);
        std::vector<long> coef{d(rng), d(rng), d(rng)}, target(5, 0);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 5; ++c) target[c] += coef[r] * rows[r][c];
        auto sol = solve_in_row_span(rows, target);
        IntMatrix m(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.at(r, c) = rows[r][c];
        if (det_bareiss(m) == 0) continue;
        REQUIRE(sol.has_value());
        for (int r = 0; r < 3; ++r) REQUIRE((*sol)[r] == coef[r]);
    }
}
