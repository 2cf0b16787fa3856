#include "s8inv/lattice.hpp"

#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace s8inv {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimensions do not match");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::optional<IntMatrix> IntMatrix::inverse_unimodular() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = at(i, j);
        aug[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && aug[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(aug[p], aug[c]);
        mpq_class inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || aug[r][c] == 0) continue;
            mpq_class f = aug[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[c][j];
        }
    }
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& v = aug[i][n + j];
            if (v.get_den() != 1) return std::nullopt;
            r.at(i, j) = v.get_num();
        }
    return r;
}

IntMatrix IntMatrix::pow(long e) const {
    if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
    IntMatrix base = *this;
    if (e < 0) {
        auto inv = inverse_unimodular();
        if (!inv) throw std::invalid_argument("negative power of a non-unimodular matrix");
        base = *inv;
        e = -e;
    }
    IntMatrix result = identity(rows_);
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool IntMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

bool IntMatrix::operator<(const IntMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return a_[i] < o.a_[i];
    return false;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix parse_int_matrix(std::string_view text) {
    std::vector<std::vector<long>> rows;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip();
        if (i >= text.size() || text[i] != c)
            throw std::invalid_argument(std::string("expected '") + c + "' in matrix at offset " + std::to_string(i));
        ++i;
    };
    expect('[');
    for (;;) {
        expect('[');
        std::vector<long> row;
        for (;;) {
            skip();
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw std::invalid_argument("expected integer in matrix at offset " + std::to_string(i));
            row.push_back(std::stol(std::string(text.substr(start, i - start))));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        expect(']');
        rows.push_back(std::move(row));
        skip();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    expect(']');
    skip();
    if (i != text.size()) throw std::invalid_argument("trailing text after matrix");
    return IntMatrix::from_rows(rows);
}

mpz_class det_bareiss(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = v;
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

IntMatrix matrix_word(std::string_view word, const MatrixEnv& env, std::size_t n) {
    IntMatrix result = IntMatrix::identity(n);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < word.size() && (std::isspace(static_cast<unsigned char>(word[i])) || word[i] == '*')) ++i;
    };
    auto name = [&]() -> IntMatrix {
        std::size_t start = i;
        while (i < word.size() && (std::isalnum(static_cast<unsigned char>(word[i])) || word[i] == '_')) ++i;
        std::string key(word.substr(start, i - start));
        auto it = env.find(key);
        if (it == env.end()) throw std::invalid_argument("unknown matrix '" + key + "'");
        if (it->second.rows() != n || it->second.cols() != n)
            throw std::invalid_argument("matrix '" + key + "' has the wrong size");
        return it->second;
    };
    skip();
    if (i >= word.size()) throw std::invalid_argument("empty matrix word");
    while (i < word.size()) {
        IntMatrix f;
        if (word[i] == '(') {
            ++i;
            skip();
            bool neg = false;
            if (i < word.size() && word[i] == '-') {
                neg = true;
                ++i;
            }
            f = name();
            if (neg) f = -f;
            skip();
            if (i >= word.size() || word[i] != ')') throw std::invalid_argument("expected ')' in matrix word");
            ++i;
        } else if (word[i] == '-') {
            ++i;
            f = -name();
        } else {
            f = name();
        }
        if (i < word.size() && word[i] == '^') {
            ++i;
            std::size_t start = i;
            if (i < word.size() && word[i] == '-') ++i;
            while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) ++i;
            if (start == i) throw std::invalid_argument("expected exponent in matrix word");
            f = f.pow(std::stol(std::string(word.substr(start, i - start))));
        }
        result = result * f;
        skip();
    }
    return result;
}

std::optional<std::vector<IntMatrix>> matrix_group_elements(const std::vector<IntMatrix>& gens, std::size_t cap) {
    if (gens.empty()) throw std::invalid_argument("matrix group needs generators");
    IntMatrix id = IntMatrix::identity(gens[0].rows());
    std::set<IntMatrix> seen{id};
    std::deque<IntMatrix> queue{id};
    while (!queue.empty()) {
        IntMatrix cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            IntMatrix next = g * cur;
            if (seen.insert(next).second) {
                if (seen.size() > cap) return std::nullopt;
                queue.push_back(std::move(next));
            }
        }
    }
    return std::vector<IntMatrix>(seen.begin(), seen.end());
}

std::optional<std::size_t> matrix_group_order(const std::vector<IntMatrix>& gens, std::size_t cap) {
    auto els = matrix_group_elements(gens, cap);
    if (!els) return std::nullopt;
    return els->size();
}

std::optional<std::vector<mpq_class>> solve_in_row_span(const std::vector<std::vector<long>>& rows,
                                                        const std::vector<long>& target) {
    // columns of the augmented system are the given rows
    const std::size_t k = rows.size(), m = target.size();
    std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(k + 1));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i].size() != m) throw std::invalid_argument("row length mismatch");
            a[j][i] = rows[i][j];
        }
        a[j][k] = target[j];
    }
    std::vector<std::size_t> pivot_row(k);
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) return std::nullopt;  // dependent rows
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t q = 0; q < m; ++q) {
            if (q == r || a[q][c] == 0) continue;
            mpq_class f = a[q][c];
            for (std::size_t j = c; j <= k; ++j) a[q][j] -= f * a[r][j];
        }
        pivot_row[c] = r++;
    }
    for (std::size_t q = r; q < m; ++q)
        if (a[q][k] != 0) return std::nullopt;  // not in the span
    std::vector<mpq_class> x(k);
    for (std::size_t c = 0; c < k; ++c) x[c] = a[pivot_row[c]][k];
    return x;
}

}  // namespace s8inv
