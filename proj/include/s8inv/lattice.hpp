#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace s8inv {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& at(std::size_t r, std::size_t c) { return a_.at(r * cols_ + c); }
    const mpz_class& at(std::size_t r, std::size_t c) const { return a_.at(r * cols_ + c); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix transpose() const;
    IntMatrix pow(long e) const;  // e >= 0, or e < 0 for unimodular matrices
    std::optional<IntMatrix> inverse_unimodular() const;
    bool is_identity() const;

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    bool operator<(const IntMatrix& o) const;

    // "[[a,b],[c,d]]"
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

IntMatrix parse_int_matrix(std::string_view text);

// Fraction-free elimination (Bareiss).
mpz_class det_bareiss(const IntMatrix& m);

using MatrixEnv = std::map<std::string, IntMatrix, std::less<>>;

// Space separated factors "M", "-M", "M^k", "(-M)^k", multiplied left to right.
IntMatrix matrix_word(std::string_view word, const MatrixEnv& env, std::size_t n);

// Closure under multiplication; nullopt when the cap is exceeded.
std::optional<std::vector<IntMatrix>> matrix_group_elements(const std::vector<IntMatrix>& gens, std::size_t cap);
std::optional<std::size_t> matrix_group_order(const std::vector<IntMatrix>& gens, std::size_t cap);

// Solves sum_i a_i * rows[i] = target over Q. Returns the unique solution
// when the rows are independent and the target lies in their span.
std::optional<std::vector<mpq_class>> solve_in_row_span(const std::vector<std::vector<long>>& rows,
                                                        const std::vector<long>& target);

}  // namespace s8inv
