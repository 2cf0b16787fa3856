#include "s8inv/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace s8inv {

VarTable::VarTable(std::string name, std::vector<std::string> vars) : name_(std::move(name)), vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!index_.emplace(vars_[i], i).second)
            throw std::invalid_argument("duplicate variable '" + vars_[i] + "' in table " + name_);
    }
}

std::optional<std::size_t> VarTable::index_of(std::string_view var) const {
    auto it = index_.find(std::string(var));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VarTablePtr make_table(std::string name, std::vector<std::string> vars) {
    return std::make_shared<const VarTable>(std::move(name), std::move(vars));
}

std::size_t ExponentsHash::operator()(const Exponents& e) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : e) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

unsigned degree_of(const Exponents& e) {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
}

int grlex_cmp(const Exponents& a, const Exponents& b) {
    unsigned da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

Exponents add_exps(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned s = unsigned(a[i]) + b[i];
        if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
        r[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

void sort_terms(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return grlex_cmp(x.exps, y.exps) > 0; });
}

}  // namespace

bool grlex_less(const Exponents& a, const Exponents& b) { return grlex_cmp(a, b) < 0; }

// ---------------------------------------------------------------- Poly

Poly::Poly(VarTablePtr vars, FieldTag field) : vars_(std::move(vars)), field_(field) {
    if (!vars_) throw std::invalid_argument("polynomial without variable table");
}

Poly Poly::constant(VarTablePtr vars, const Scalar& c) {
    Poly p(std::move(vars), c.tag());
    if (!c.is_zero()) p.terms_.push_back(Term{Exponents(p.vars_->size(), 0), c});
    return p;
}

Poly Poly::variable(VarTablePtr vars, FieldTag field, std::size_t i) {
    Exponents e(vars->size(), 0);
    e.at(i) = 1;
    return monomial(std::move(vars), Scalar::one(field), std::move(e));
}

Poly Poly::monomial(VarTablePtr vars, const Scalar& c, Exponents exps) {
    Poly p(std::move(vars), c.tag());
    if (exps.size() != p.vars_->size()) throw std::invalid_argument("exponent vector has wrong length");
    if (!c.is_zero()) p.terms_.push_back(Term{std::move(exps), c});
    return p;
}

Poly Poly::from_terms(VarTablePtr vars, FieldTag field, std::vector<Term> terms) {
    Poly p(std::move(vars), field);
    std::unordered_map<Exponents, Scalar, ExponentsHash> acc;
    acc.reserve(terms.size());
    for (auto& t : terms) {
        if (t.exps.size() != p.vars_->size()) throw std::invalid_argument("exponent vector has wrong length");
        auto it = acc.find(t.exps);
        if (it == acc.end())
            acc.emplace(std::move(t.exps), std::move(t.coef));
        else
            it->second += t.coef;
    }
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) p.terms_.push_back(Term{e, c});
    sort_terms(p.terms_);
    return p;
}

void Poly::require_compatible(const Poly& o) const {
    if (field_ != o.field_)
        throw FieldError("field mismatch: " + std::string(field_name(field_)) + " vs " + std::string(field_name(o.field_)));
    if (!vars_->same_as(*o.vars_))
        throw std::invalid_argument("variable table mismatch: " + vars_->name() + " vs " + o.vars_->name());
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exps) == 0);
}

bool Poly::is_one() const { return terms_.size() == 1 && degree_of(terms_[0].exps) == 0 && terms_[0].coef.is_one(); }

const Term& Poly::leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : degree_of(terms_.front().exps); }

bool Poly::uses_variable(std::size_t i) const {
    for (const auto& t : terms_)
        if (t.exps[i] != 0) return true;
    return false;
}

Poly Poly::operator+(const Poly& o) const {
    require_compatible(o);
    Poly r(vars_, field_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = grlex_cmp(terms_[i].exps, o.terms_[j].exps);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Scalar s = terms_[i].coef + o.terms_[j].coef;
            if (!s.is_zero()) r.terms_.push_back(Term{terms_[i].exps, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Scalar& c) const {
    if (c.tag() != field_) throw FieldError("field mismatch in scalar multiple");
    Poly r(vars_, field_);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coef = t.coef * c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_compatible(o);
    Poly r(vars_, field_);
    if (terms_.empty() || o.terms_.empty()) return r;
    if (terms_.size() == 1 || o.terms_.size() == 1) {
        const Term& m = terms_.size() == 1 ? terms_[0] : o.terms_[0];
        const Poly& p = terms_.size() == 1 ? o : *this;
        r.terms_.reserve(p.terms_.size());
        // a monomial multiple keeps the order
        for (const auto& t : p.terms_) {
            Scalar c = t.coef * m.coef;
            if (!c.is_zero()) r.terms_.push_back(Term{add_exps(t.exps, m.exps), std::move(c)});
        }
        return r;
    }
    std::unordered_map<Exponents, Scalar, ExponentsHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Exponents e = add_exps(a.exps, b.exps);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), a.coef * b.coef);
            else
                it->second += a.coef * b.coef;
        }
    }
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) r.terms_.push_back(Term{e, c});
    sort_terms(r.terms_);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(vars_, Scalar::one(field_));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (field_ != o.field_ || !vars_->same_as(*o.vars_) || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != o.terms_[i].exps || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& q) const {
    require_compatible(q);
    if (q.is_zero()) throw FieldError("division by the zero polynomial");
    Poly quotient(vars_, field_);
    if (is_zero()) return quotient;
    const Term& lq = q.leading_term();
    Scalar lq_inv = lq.coef.inverse();
    Poly rem = *this;
    std::vector<Term> qterms;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading_term();
        Exponents e(lr.exps.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (lr.exps[i] < lq.exps[i]) return std::nullopt;
            e[i] = static_cast<std::uint16_t>(lr.exps[i] - lq.exps[i]);
        }
        Term t{e, lr.coef * lq_inv};
        rem = rem - q * monomial(vars_, t.coef, t.exps);
        qterms.push_back(std::move(t));
    }
    // quotient terms arrive in decreasing order
    quotient.terms_ = std::move(qterms);
    return quotient;
}

Exponents Poly::min_exponents() const {
    Exponents m(vars_->size(), 0);
    if (terms_.empty()) return m;
    m = terms_[0].exps;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exps[i]);
    return m;
}

Poly Poly::shift_down(const Exponents& m) const {
    Poly r = *this;
    for (auto& t : r.terms_)
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (t.exps[i] < m[i]) throw std::logic_error("monomial shift below zero");
            t.exps[i] = static_cast<std::uint16_t>(t.exps[i] - m[i]);
        }
    return r;
}

Poly Poly::shift_up(const Exponents& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.exps = add_exps(t.exps, m);
    return r;
}

Poly Poly::permute_variables(const std::vector<std::size_t>& image) const {
    if (image.size() != vars_->size()) throw std::invalid_argument("permutation size does not match table");
    Poly r(vars_, field_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(t.exps.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[image[i]] = t.exps[i];
        r.terms_.push_back(Term{std::move(e), t.coef});
    }
    sort_terms(r.terms_);
    return r;
}

Poly Poly::embed(VarTablePtr target, const std::vector<std::size_t>& index_map) const {
    if (index_map.size() != vars_->size()) throw std::invalid_argument("index map size does not match table");
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(target->size(), 0);
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            if (t.exps[i]) e.at(index_map[i]) = static_cast<std::uint16_t>(e.at(index_map[i]) + t.exps[i]);
        ts.push_back(Term{std::move(e), t.coef});
    }
    return from_terms(std::move(target), field_, std::move(ts));
}

Poly Poly::conjugate() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = t.coef.conjugate();
    return r;
}

Poly Poly::derivative(std::size_t i) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        if (t.exps[i] == 0) continue;
        Exponents e = t.exps;
        Scalar c = t.coef * Scalar::from_int(field_, e[i]);
        e[i] = static_cast<std::uint16_t>(e[i] - 1);
        ts.push_back(Term{std::move(e), std::move(c)});
    }
    return from_terms(vars_, field_, std::move(ts));
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != vars_->size()) throw std::invalid_argument("evaluation point has wrong length");
    Scalar r = Scalar::zero(field_);
    for (const auto& t : terms_) {
        Scalar m = t.coef;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.exps[i]) m = m * point[i].pow(t.exps[i]);
        r = r + m;
    }
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (!t.exps[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->var(i);
            if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
        }
        Scalar c = t.coef;
        bool negative = c.is_negative_rational();
        if (negative) c = -c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string cs = c.to_string();
        if (c.zeta_part() != 0 && cs != "zeta3") cs = "(" + cs + ")";
        if (mono.empty())
            os << cs;
        else if (c.is_one())
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    ExponentsHash eh;
    for (const auto& t : terms_) h = h * 31 + eh(t.exps) + t.coef.hash();
    return h;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.vars(), Scalar::one(num_.field()))) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.field() != den_.field()) throw FieldError("numerator and denominator over different fields");
    if (!num_.vars()->same_as(*den_.vars())) throw std::invalid_argument("numerator and denominator over different tables");
    normalize();
}

void RatFunc::normalize() {
    if (den_.is_zero()) throw FieldError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.vars(), Scalar::one(num_.field()));
        return;
    }
    // strip the common monomial content
    Exponents a = num_.min_exponents(), b = den_.min_exponents();
    bool any = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = std::min(a[i], b[i]);
        any = any || a[i];
    }
    if (any) {
        num_ = num_.shift_down(a);
        den_ = den_.shift_down(a);
    }
    const Scalar& lc = den_.leading_term().coef;
    if (!lc.is_one()) {
        Scalar inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    if (num_.size() == den_.size() && num_ == den_) {
        num_ = Poly::constant(num_.vars(), Scalar::one(num_.field()));
        den_ = num_;
    }
}

RatFunc RatFunc::zero(VarTablePtr vars, FieldTag field) { return RatFunc(Poly(std::move(vars), field)); }
RatFunc RatFunc::one(VarTablePtr vars, FieldTag field) { return constant(std::move(vars), Scalar::one(field)); }
RatFunc RatFunc::constant(VarTablePtr vars, const Scalar& c) { return RatFunc(Poly::constant(std::move(vars), c)); }
RatFunc RatFunc::variable(VarTablePtr vars, FieldTag field, std::size_t i) {
    return RatFunc(Poly::variable(std::move(vars), field, i));
}

namespace {
constexpr std::size_t kDivisionTrialLimit = 400;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    if (o.den_.is_one()) return RatFunc(num_ + o.num_ * den_, den_);
    if (den_.is_one()) return RatFunc(num_ * o.den_ + o.num_, o.den_);
    if (den_.size() <= kDivisionTrialLimit && o.den_.size() <= kDivisionTrialLimit) {
        if (den_.size() >= o.den_.size()) {
            if (auto q = den_.divide_exact(o.den_)) return RatFunc(num_ + o.num_ * *q, den_);
        } else {
            if (auto q = o.den_.divide_exact(den_)) return RatFunc(num_ * *q + o.num_, o.den_);
        }
    }
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Raw{}); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return zero(vars(), field());
    if (den_ == o.num_) return RatFunc(num_, o.den_);
    if (num_ == o.den_) return RatFunc(o.num_, den_);
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw FieldError("division by zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw FieldError("division by zero rational function");
    if (is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_, o.num_);
    if (num_ == o.num_) return RatFunc(o.den_, den_);
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFunc RatFunc::conjugate() const { return RatFunc(num_.conjugate(), den_.conjugate()); }

RatFunc RatFunc::embed(VarTablePtr target, const std::vector<std::size_t>& index_map) const {
    return RatFunc(num_.embed(target, index_map), den_.embed(target, index_map));
}

bool RatFunc::equals(const RatFunc& o) const {
    if (field() != o.field()) throw FieldError("comparing rational functions over different fields");
    if (!vars()->same_as(*o.vars())) throw std::invalid_argument("comparing rational functions over different tables");
    if (den_ == o.den_) return num_ == o.num_;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return num_ * o.den_ == o.num_ * den_;
}

std::optional<RatFunc::Laurent> RatFunc::as_laurent() const {
    if (num_.size() != 1 || den_.size() != 1) return std::nullopt;
    const Term& a = num_.terms()[0];
    const Term& b = den_.terms()[0];
    Laurent l{a.coef / b.coef, std::vector<long>(a.exps.size())};
    for (std::size_t i = 0; i < a.exps.size(); ++i) l.exps[i] = long(a.exps[i]) - long(b.exps[i]);
    return l;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool ratfunc_eq(const RatFunc& a, const RatFunc& b) { return a.equals(b); }

// ---------------------------------------------------------------- Substitution

Substitution::Substitution(VarTablePtr source, VarTablePtr target, std::vector<RatFunc> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size())
        throw std::invalid_argument("substitution for table " + source_->name() + " needs " +
                                    std::to_string(source_->size()) + " images");
    all_laurent_ = true;
    for (const auto& im : images_) {
        if (!im.vars()->same_as(*target_))
            throw std::invalid_argument("substitution image is not over table " + target_->name());
        if (im.is_zero() || !im.as_laurent()) all_laurent_ = false;
    }
}

RatFunc Substitution::apply_laurent(const Poly& p) const {
    const std::size_t n = source_->size(), m = target_->size();
    FieldTag field = p.field();
    std::vector<RatFunc::Laurent> ls;
    ls.reserve(n);
    for (const auto& im : images_) ls.push_back(*im.as_laurent());
    std::vector<std::map<unsigned, Scalar>> coef_pow(n);
    auto cpow = [&](std::size_t i, unsigned k) -> const Scalar& {
        auto it = coef_pow[i].find(k);
        if (it == coef_pow[i].end()) it = coef_pow[i].emplace(k, ls[i].coef.pow(k)).first;
        return it->second;
    };
    std::map<std::vector<long>, Scalar> acc;
    for (const auto& t : p.terms()) {
        Scalar c = t.coef;
        std::vector<long> e(m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!t.exps[i]) continue;
            if (!ls[i].coef.is_one()) c = c * cpow(i, t.exps[i]);
            for (std::size_t j = 0; j < m; ++j) e[j] += long(t.exps[i]) * ls[i].exps[j];
        }
        auto it = acc.find(e);
        if (it == acc.end())
            acc.emplace(std::move(e), std::move(c));
        else
            it->second += c;
    }
    std::vector<long> low(m, 0);
    for (const auto& [e, c] : acc)
        for (std::size_t j = 0; j < m; ++j) low[j] = std::min(low[j], e[j]);
    std::vector<Term> ts;
    for (const auto& [e, c] : acc) {
        if (c.is_zero()) continue;
        Exponents ex(m);
        for (std::size_t j = 0; j < m; ++j) {
            long v = e[j] - low[j];
            if (v > 0xFFFF) throw std::overflow_error("exponent overflow");
            ex[j] = static_cast<std::uint16_t>(v);
        }
        ts.push_back(Term{std::move(ex), c});
    }
    Exponents dex(m);
    for (std::size_t j = 0; j < m; ++j) dex[j] = static_cast<std::uint16_t>(-low[j]);
    return RatFunc(Poly::from_terms(target_, field, std::move(ts)), Poly::monomial(target_, Scalar::one(field), dex));
}

RatFunc Substitution::apply(const Poly& p) const {
    if (!p.vars()->same_as(*source_))
        throw std::invalid_argument("substitution over " + source_->name() + " applied to polynomial over " +
                                    p.vars()->name());
    const FieldTag field = p.field();
    for (const auto& im : images_)
        if (im.field() != field) throw FieldError("substitution images over a different field");
    if (p.is_zero()) return RatFunc::zero(target_, field);
    if (all_laurent_) return apply_laurent(p);

    const std::size_t n = source_->size();
    std::vector<bool> used(n, false);
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < n; ++i)
            if (t.exps[i]) used[i] = true;

    // images sharing a denominator share one factor of the common denominator
    std::vector<int> group(n, -1);
    std::vector<const Poly*> gden;
    for (std::size_t i = 0; i < n; ++i) {
        if (!used[i] || images_[i].den().is_one()) continue;
        for (std::size_t g = 0; g < gden.size(); ++g)
            if (*gden[g] == images_[i].den()) group[i] = int(g);
        if (group[i] < 0) {
            group[i] = int(gden.size());
            gden.push_back(&images_[i].den());
        }
    }
    std::vector<unsigned> need(gden.size(), 0);
    for (const auto& t : p.terms()) {
        std::vector<unsigned> s(gden.size(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (group[i] >= 0) s[group[i]] += t.exps[i];
        for (std::size_t g = 0; g < gden.size(); ++g) need[g] = std::max(need[g], s[g]);
    }

    std::vector<std::vector<Poly>> npow(n), dpow(gden.size());
    auto power = [&](std::vector<Poly>& cache, const Poly& base, unsigned k) -> const Poly& {
        if (cache.empty()) cache.push_back(Poly::constant(target_, Scalar::one(field)));
        while (cache.size() <= k) cache.push_back(cache.back() * base);
        return cache[k];
    };

    std::unordered_map<Exponents, Scalar, ExponentsHash> acc;
    for (const auto& t : p.terms()) {
        Poly prod = Poly::constant(target_, t.coef);
        std::vector<unsigned> s(gden.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!t.exps[i]) continue;
            prod = prod * power(npow[i], images_[i].num(), t.exps[i]);
            if (group[i] >= 0) s[group[i]] += t.exps[i];
        }
        for (std::size_t g = 0; g < gden.size(); ++g)
            if (need[g] > s[g]) prod = prod * power(dpow[g], *gden[g], need[g] - s[g]);
        for (const auto& term : prod.terms()) {
            auto it = acc.find(term.exps);
            if (it == acc.end())
                acc.emplace(term.exps, term.coef);
            else
                it->second += term.coef;
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) ts.push_back(Term{e, c});
    Poly num = Poly::from_terms(target_, field, std::move(ts));
    Poly den = Poly::constant(target_, Scalar::one(field));
    for (std::size_t g = 0; g < gden.size(); ++g)
        if (need[g]) den = den * power(dpow[g], *gden[g], need[g]);
    return RatFunc(std::move(num), std::move(den));
}

RatFunc Substitution::apply(const RatFunc& f) const {
    RatFunc n = apply(f.num());
    if (f.den().is_one()) return n;
    RatFunc d = apply(f.den());
    if (d.is_zero()) throw FieldError("substitution sends a denominator to zero");
    return n / d;
}

RatFunc substitute(const RatFunc& f, const Substitution& s) { return s.apply(f); }

}  // namespace s8inv
