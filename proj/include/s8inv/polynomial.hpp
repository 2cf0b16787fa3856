#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "s8inv/scalar.hpp"

namespace s8inv {

class VarTable {
public:
    VarTable(std::string name, std::vector<std::string> vars);

    const std::string& name() const { return name_; }
    std::size_t size() const { return vars_.size(); }
    const std::string& var(std::size_t i) const { return vars_.at(i); }
    const std::vector<std::string>& vars() const { return vars_; }
    std::optional<std::size_t> index_of(std::string_view var) const;

    // Tables are interchangeable when their variable lists agree.
    bool same_as(const VarTable& o) const { return this == &o || vars_ == o.vars_; }

private:
    std::string name_;
    std::vector<std::string> vars_;
    std::unordered_map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;
VarTablePtr make_table(std::string name, std::vector<std::string> vars);

using Exponents = boost::container::small_vector<std::uint16_t, 10>;

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const;
};

// Graded lexicographic order with x1 > x2 > ...
bool grlex_less(const Exponents& a, const Exponents& b);

struct Term {
    Exponents exps;
    Scalar coef;
};

class Poly {
public:
    Poly(VarTablePtr vars, FieldTag field);

    static Poly constant(VarTablePtr vars, const Scalar& c);
    static Poly variable(VarTablePtr vars, FieldTag field, std::size_t i);
    static Poly monomial(VarTablePtr vars, const Scalar& c, Exponents exps);
    // Terms may repeat and contain zeros; they are combined.
    static Poly from_terms(VarTablePtr vars, FieldTag field, std::vector<Term> terms);

    const VarTablePtr& vars() const { return vars_; }
    FieldTag field() const { return field_; }
    // Sorted by decreasing graded-lex order.
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const Term& leading_term() const;
    unsigned total_degree() const;
    bool uses_variable(std::size_t i) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Scalar& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Quotient if q divides this exactly, otherwise nullopt.
    std::optional<Poly> divide_exact(const Poly& q) const;

    // Componentwise minimum exponent over all terms.
    Exponents min_exponents() const;
    Poly shift_down(const Exponents& m) const;
    Poly shift_up(const Exponents& m) const;

    // Variable i becomes variable image[i] of the same table.
    Poly permute_variables(const std::vector<std::size_t>& image) const;
    // Re-home into another table; variable i becomes target variable index_map[i].
    Poly embed(VarTablePtr target, const std::vector<std::size_t>& index_map) const;
    Poly conjugate() const;
    Poly derivative(std::size_t i) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;

    std::string to_string() const;
    std::size_t hash() const;

private:
    void require_compatible(const Poly& o) const;

    VarTablePtr vars_;
    FieldTag field_;
    std::vector<Term> terms_;
};

class RatFunc {
public:
    explicit RatFunc(Poly num);
    RatFunc(Poly num, Poly den);

    static RatFunc zero(VarTablePtr vars, FieldTag field);
    static RatFunc one(VarTablePtr vars, FieldTag field);
    static RatFunc constant(VarTablePtr vars, const Scalar& c);
    static RatFunc variable(VarTablePtr vars, FieldTag field, std::size_t i);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarTablePtr& vars() const { return num_.vars(); }
    FieldTag field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(long e) const;
    RatFunc conjugate() const;
    RatFunc embed(VarTablePtr target, const std::vector<std::size_t>& index_map) const;

    // Equality as elements of the fraction field (cross-multiplication).
    bool equals(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return equals(o); }
    bool operator!=(const RatFunc& o) const { return !equals(o); }

    // c * x^v with v possibly negative, when num and den are single terms.
    struct Laurent {
        Scalar coef;
        std::vector<long> exps;
    };
    std::optional<Laurent> as_laurent() const;

    bool uses_variable(std::size_t i) const { return num_.uses_variable(i) || den_.uses_variable(i); }
    std::string to_string() const;

private:
    struct Raw {};
    RatFunc(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    Poly num_;
    Poly den_;
};

bool ratfunc_eq(const RatFunc& a, const RatFunc& b);

// Ring homomorphism K[source] -> K(target) given by the images of the
// source variables.
class Substitution {
public:
    Substitution(VarTablePtr source, VarTablePtr target, std::vector<RatFunc> images);

    const VarTablePtr& source() const { return source_; }
    const VarTablePtr& target() const { return target_; }
    const std::vector<RatFunc>& images() const { return images_; }

    RatFunc apply(const Poly& p) const;
    RatFunc apply(const RatFunc& f) const;

private:
    RatFunc apply_laurent(const Poly& p) const;

    VarTablePtr source_;
    VarTablePtr target_;
    std::vector<RatFunc> images_;
    bool all_laurent_ = false;
};

RatFunc substitute(const RatFunc& f, const Substitution& s);

}  // namespace s8inv
