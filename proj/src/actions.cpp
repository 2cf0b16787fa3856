#include "s8inv/actions.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace s8inv {

bool MonomialAction::is_pure() const {
    return std::all_of(coefs.begin(), coefs.end(), [](const Scalar& c) { return c.is_one(); });
}

// ---------------------------------------------------------------- linear algebra over a field

std::size_t scalar_rank(std::vector<std::vector<Scalar>> rows) {
    if (rows.empty()) return 0;
    const std::size_t m = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Scalar inv = rows[r][c].inverse();
        for (std::size_t q = r + 1; q < rows.size(); ++q) {
            if (rows[q][c].is_zero()) continue;
            Scalar f = rows[q][c] * inv;
            for (std::size_t j = c; j < m; ++j) rows[q][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

std::optional<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& basis,
                                                const std::vector<Scalar>& v) {
    const std::size_t k = basis.size(), m = v.size();
    if (k == 0) return std::nullopt;
    const FieldTag f = v[0].tag();
    std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(k + 1, Scalar::zero(f)));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i) a[j][i] = basis[i].at(j);
        a[j][k] = v[j];
    }
    std::vector<std::size_t> prow(k);
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c].is_zero()) ++p;
        if (p == m) return std::nullopt;
        std::swap(a[p], a[r]);
        Scalar inv = a[r][c].inverse();
        for (auto& x : a[r]) x = x * inv;
        for (std::size_t q = 0; q < m; ++q) {
            if (q == r || a[q][c].is_zero()) continue;
            Scalar fq = a[q][c];
            for (std::size_t j = c; j <= k; ++j) a[q][j] -= fq * a[r][j];
        }
        prow[c] = r++;
    }
    for (std::size_t q = r; q < m; ++q)
        if (!a[q][k].is_zero()) return std::nullopt;
    std::vector<Scalar> x;
    for (std::size_t c = 0; c < k; ++c) x.push_back(a[prow[c]][k]);
    return x;
}

namespace {

// Linear form without constant term: coefficient vector, else nullopt.
std::optional<std::vector<Scalar>> linear_coefficients(const RatFunc& f) {
    if (!f.is_polynomial()) return std::nullopt;
    const std::size_t n = f.vars()->size();
    std::vector<Scalar> c(n, Scalar::zero(f.field()));
    for (const auto& t : f.num().terms()) {
        unsigned deg = 0;
        std::size_t at = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (t.exps[i]) {
                deg += t.exps[i];
                at = i;
            }
        if (deg != 1) return std::nullopt;
        c[at] = t.coef;
    }
    return c;
}

}  // namespace

// ---------------------------------------------------------------- tower structure

const Tower::Node& Tower::node(int t) const {
    if (t < 0 || std::size_t(t) >= nodes_.size()) throw std::out_of_range("unknown table id");
    return nodes_[std::size_t(t)];
}

std::optional<int> Tower::parent(int t) const { return node(t).parent; }

std::optional<int> Tower::find(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].vars->name() == name) return int(i);
    return std::nullopt;
}

int Tower::add_root(VarTablePtr vars) {
    if (find(vars->name())) throw std::invalid_argument("table '" + vars->name() + "' already exists");
    Node n;
    n.vars = std::move(vars);
    n.independent = true;
    nodes_.push_back(std::move(n));
    return int(nodes_.size() - 1);
}

int Tower::add_derived(VarTablePtr vars, int parent_id, std::vector<RatFunc> defs) {
    if (find(vars->name())) throw std::invalid_argument("table '" + vars->name() + "' already exists");
    const Node& p = node(parent_id);
    if (defs.size() != vars->size())
        throw std::invalid_argument("table '" + vars->name() + "' needs " + std::to_string(vars->size()) + " definitions");
    for (const auto& d : defs) {
        if (!d.vars()->same_as(*p.vars))
            throw std::invalid_argument("definition for '" + vars->name() + "' is not over table " + p.vars->name());
        if (d.field() != field_) throw FieldError("definition over the wrong field");
    }
    Node n;
    n.vars = vars;
    n.parent = parent_id;
    n.depth = p.depth + 1;
    n.down = std::make_unique<Substitution>(vars, p.vars, defs);
    n.defs = std::move(defs);
    nodes_.push_back(std::move(n));
    int id = int(nodes_.size() - 1);
    nodes_.back().independent = certify_independent(id);
    return id;
}

int Tower::add_subset(std::string name, int parent_id, const std::vector<std::size_t>& indices) {
    const Node& p = node(parent_id);
    std::vector<std::string> names;
    std::vector<RatFunc> defs;
    for (auto i : indices) {
        names.push_back(p.vars->var(i));
        defs.push_back(RatFunc::variable(p.vars, field_, i));
    }
    int id = add_derived(make_table(std::move(name), std::move(names)), parent_id, std::move(defs));
    nodes_[std::size_t(id)].subset = true;
    return id;
}

bool Tower::is_ancestor_or_self(int a, int t) const {
    std::optional<int> cur = t;
    while (cur) {
        if (*cur == a) return true;
        cur = node(*cur).parent;
    }
    return false;
}

std::optional<int> Tower::common_ancestor(const std::vector<int>& tables) const {
    if (tables.empty()) return std::nullopt;
    // walk up from the first table until every table lies below the candidate
    std::optional<int> cand = tables[0];
    while (cand) {
        bool ok = true;
        for (int t : tables)
            if (!is_ancestor_or_self(*cand, t)) {
                ok = false;
                break;
            }
        if (ok) return cand;
        cand = node(*cand).parent;
    }
    return std::nullopt;
}

bool Tower::certify_independent(int t) const {
    const Node& n = node(t);
    if (!n.parent) return true;
    const Node& p = node(*n.parent);
    if (!p.independent) return false;
    const std::size_t k = n.defs.size(), m = p.vars->size();
    if (k > m) return false;

    std::vector<std::vector<Scalar>> lin;
    for (const auto& d : n.defs) {
        auto c = linear_coefficients(d);
        if (!c) break;
        lin.push_back(std::move(*c));
    }
    if (lin.size() == k) return scalar_rank(lin) == k;

    std::vector<std::vector<long>> mono;
    for (const auto& d : n.defs) {
        auto l = d.is_zero() ? std::nullopt : d.as_laurent();
        if (!l) break;
        mono.push_back(l->exps);
    }
    if (mono.size() == k) {
        std::vector<std::vector<Scalar>> rows;
        for (const auto& r : mono) {
            std::vector<Scalar> row;
            for (long v : r) row.push_back(Scalar::from_int(FieldTag::Q, v));
            rows.push_back(std::move(row));
        }
        return scalar_rank(rows) == k;
    }

    // Jacobian of full rank at some point certifies independence.
    if (characteristic(field_) != 0) return false;
    std::mt19937 rng(12345u + unsigned(t));
    std::uniform_int_distribution<int> dist(-40, 40);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Scalar> pt;
        for (std::size_t i = 0; i < m; ++i) pt.push_back(Scalar::from_int(field_, dist(rng)));
        std::vector<std::vector<Scalar>> jac;
        bool bad = false;
        for (const auto& d : n.defs) {
            Scalar nv = d.num().evaluate(pt), dv = d.den().evaluate(pt);
            if (dv.is_zero()) {
                bad = true;
                break;
            }
            std::vector<Scalar> row;
            for (std::size_t i = 0; i < m; ++i) {
                Scalar dn = d.num().derivative(i).evaluate(pt), dd = d.den().derivative(i).evaluate(pt);
                row.push_back((dn * dv - nv * dd) / (dv * dv));
            }
            jac.push_back(std::move(row));
        }
        if (bad) continue;
        if (scalar_rank(jac) == k) return true;
    }
    return false;
}

Tower::Value Tower::variable(int t, std::size_t i) const { return {RatFunc::variable(vars(t), field_, i), t}; }

Tower::Value Tower::definition(int t, std::size_t i) const {
    const Node& n = node(t);
    if (!n.parent) return variable(t, i);
    return {n.defs.at(i), *n.parent};
}

RatFunc Tower::lower(const RatFunc& f, int from, int to) {
    if (!f.vars()->same_as(*vars(from))) throw std::invalid_argument("value is not over table " + vars(from)->name());
    RatFunc cur = f;
    int t = from;
    while (t != to) {
        const Node& n = node(t);
        if (!n.parent) throw std::invalid_argument("table " + vars(to)->name() + " is not below " + vars(from)->name());
        cur = n.down->apply(cur);
        t = *n.parent;
    }
    return cur;
}

const RatFunc& Tower::lowered_variable(int t, std::size_t i, int to) {
    auto key = std::make_tuple(t, i, to);
    auto it = lowered_cache_.find(key);
    if (it != lowered_cache_.end()) return it->second;
    RatFunc r = lower(RatFunc::variable(vars(t), field_, i), t, to);
    return lowered_cache_.emplace(key, std::move(r)).first->second;
}

// ---------------------------------------------------------------- actions

RatFunc Tower::apply_action(const RatFunc& f, int t, const GroupElement& g, const std::vector<RatFunc>& images) const {
    Substitution s(vars(t), vars(t), images);
    return s.apply(g.conj ? f.conjugate() : f);
}

void Tower::register_action(int t, const GroupElement& g, std::vector<RatFunc> images) {
    if (images.size() != vars(t)->size()) throw std::invalid_argument("action images have the wrong length");
    registered_[{t, g}] = images;
    action_cache_[{t, g}] = std::move(images);
}

std::optional<std::vector<RatFunc>> Tower::action_on(int t, const GroupElement& g) {
    auto key = std::make_pair(t, g);
    if (auto it = action_cache_.find(key); it != action_cache_.end()) return it->second;
    std::optional<std::vector<RatFunc>> result;
    const Node& n = node(t);
    if (auto r = registered_.find(key); r != registered_.end()) {
        result = r->second;
    } else if (!n.parent) {
        if (g.perm.degree() == n.vars->size()) {
            std::vector<RatFunc> imgs;
            for (std::size_t i = 0; i < n.vars->size(); ++i)
                imgs.push_back(RatFunc::variable(n.vars, field_, g.perm.images()[i]));
            result = std::move(imgs);
        }
    } else {
        result = linear_action(t, g);
        if (!result) result = permutation_action(t, g);
    }
    action_cache_[key] = result;
    return result;
}

std::optional<std::vector<RatFunc>> Tower::linear_action(int t, const GroupElement& g) {
    const Node& n = node(t);
    const int p = *n.parent;
    std::vector<std::vector<Scalar>> basis;
    for (const auto& d : n.defs) {
        auto c = linear_coefficients(d);
        if (!c) return std::nullopt;
        basis.push_back(std::move(*c));
    }
    auto pimg = action_on(p, g);
    if (!pimg) return std::nullopt;
    for (const auto& im : *pimg)
        if (!linear_coefficients(im)) return std::nullopt;
    std::vector<RatFunc> out;
    for (const auto& d : n.defs) {
        auto c = linear_coefficients(apply_action(d, p, g, *pimg));
        if (!c) return std::nullopt;
        auto x = solve_linear(basis, *c);
        if (!x) return std::nullopt;
        RatFunc img = RatFunc::zero(n.vars, field_);
        for (std::size_t j = 0; j < x->size(); ++j)
            if (!(*x)[j].is_zero())
                img = img + RatFunc::variable(n.vars, field_, j) * RatFunc::constant(n.vars, (*x)[j]);
        out.push_back(std::move(img));
    }
    return out;
}

std::optional<std::vector<RatFunc>> Tower::permutation_action(int t, const GroupElement& g) {
    const Node& n = node(t);
    const std::size_t k = n.defs.size();
    std::vector<Value> imgs;
    for (std::size_t i = 0; i < k; ++i) imgs.push_back(act(g, definition(t, i)));
    std::vector<int> match(k, -1);
    std::vector<bool> used(k, false);
    // exact representation first, then cross-multiplication
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < k; ++i) {
            if (match[i] >= 0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (used[j]) continue;
                const RatFunc& dj = lowered_variable(t, j, imgs[i].level);
                bool eq = pass == 0 ? (dj.num() == imgs[i].f.num() && dj.den() == imgs[i].f.den()) : dj.equals(imgs[i].f);
                if (eq) {
                    match[i] = int(j);
                    used[j] = true;
                    break;
                }
            }
        }
    std::vector<RatFunc> out;
    for (std::size_t i = 0; i < k; ++i) {
        if (match[i] < 0) return std::nullopt;
        out.push_back(RatFunc::variable(n.vars, field_, std::size_t(match[i])));
    }
    return out;
}

Tower::Value Tower::act(const GroupElement& g, const Value& v) {
    int level = v.level;
    RatFunc f = v.f;
    for (;;) {
        if (auto imgs = action_on(level, g)) return {apply_action(f, level, g, *imgs), level};
        const Node& n = node(level);
        if (!n.parent) throw ActionError("no action of " + g.to_string() + " on table " + n.vars->name());
        f = n.down->apply(f);
        level = *n.parent;
    }
}

bool Tower::equal(const Value& a, const Value& b) {
    auto c = common_ancestor({a.level, b.level});
    if (!c) throw std::invalid_argument("values over unrelated tables");
    int level = *c;
    RatFunc fa = lower(a.f, a.level, level), fb = lower(b.f, b.level, level);
    for (;;) {
        if (fa.equals(fb)) return true;
        const Node& n = node(level);
        if (n.independent || !n.parent) return false;
        fa = n.down->apply(fa);
        fb = n.down->apply(fb);
        level = *n.parent;
    }
}

std::optional<Perm> Tower::induced_permutation(int t, const GroupElement& g) {
    const std::size_t k = vars(t)->size();
    std::vector<std::uint8_t> img(k);
    std::vector<bool> used(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        Value gi = act(g, definition(t, i));
        int found = -1;
        for (int pass = 0; pass < 2 && found < 0; ++pass)
            for (std::size_t j = 0; j < k && found < 0; ++j) {
                if (used[j]) continue;
                Value dj = definition(t, j);
                if (pass == 0) {
                    if (dj.level == gi.level && dj.f.num() == gi.f.num() && dj.f.den() == gi.f.den()) found = int(j);
                } else if (equal(gi, dj)) {
                    found = int(j);
                }
            }
        if (found < 0) return std::nullopt;
        used[std::size_t(found)] = true;
        img[i] = static_cast<std::uint8_t>(found);
    }
    return Perm(std::move(img));
}

bool Tower::fixes_all(int t, const GroupElement& g) {
    for (std::size_t i = 0; i < vars(t)->size(); ++i) {
        Value d = definition(t, i);
        if (!equal(act(g, d), d)) return false;
    }
    return true;
}

std::optional<MonomialAction> Tower::monomial_action(int t, const GroupElement& g, std::string* why) {
    auto fail = [&](std::string msg) -> std::optional<MonomialAction> {
        if (why) *why = std::move(msg);
        return std::nullopt;
    };
    const Node& n = node(t);
    if (!n.parent) return fail("table " + n.vars->name() + " has no definitions");
    const std::size_t k = n.defs.size();
    // images already known in the table's own variables
    if (auto own = action_on(t, g)) {
        MonomialAction ma{IntMatrix(k, k), {}};
        for (std::size_t j = 0; j < k; ++j) {
            const RatFunc& im = (*own)[j];
            auto l = im.is_zero() ? std::nullopt : im.as_laurent();
            if (!l) return fail("image of " + n.vars->var(j) + " is not a monomial: " + im.to_string());
            for (std::size_t i = 0; i < k; ++i) ma.matrix.at(i, j) = l->exps[i];
            ma.coefs.push_back(l->coef);
        }
        return ma;
    }
    std::optional<int> level = n.parent;
    while (level) {
        std::vector<RatFunc::Laurent> defs;
        for (std::size_t j = 0; j < k; ++j) {
            const RatFunc& d = lowered_variable(t, j, *level);
            auto l = d.is_zero() ? std::nullopt : d.as_laurent();
            if (!l) return fail("definition " + n.vars->var(j) + " is not a monomial over " + vars(*level)->name());
            defs.push_back(std::move(*l));
        }
        auto imgs = action_on(*level, g);
        if (!imgs) {
            level = node(*level).parent;
            continue;
        }
        std::vector<std::vector<long>> rows;
        for (const auto& d : defs) rows.push_back(d.exps);
        MonomialAction ma{IntMatrix(k, k), {}};
        for (std::size_t j = 0; j < k; ++j) {
            RatFunc im = apply_action(lowered_variable(t, j, *level), *level, g, *imgs);
            auto l = im.is_zero() ? std::nullopt : im.as_laurent();
            if (!l) return fail("image of " + n.vars->var(j) + " is not a monomial: " + im.to_string());
            auto a = solve_in_row_span(rows, l->exps);
            if (!a) return fail("image of " + n.vars->var(j) + " is not a monomial in " + n.vars->name());
            Scalar c = l->coef;
            for (std::size_t i = 0; i < k; ++i) {
                const mpq_class& v = (*a)[i];
                if (v.get_den() != 1) return fail("image of " + n.vars->var(j) + " needs a fractional exponent");
                ma.matrix.at(i, j) = v.get_num();
                long e = v.get_num().get_si();
                if (e != 0) c = c / defs[i].coef.pow(e);
            }
            ma.coefs.push_back(c);
        }
        return ma;
    }
    return fail("no level below " + n.vars->name() + " with a known action of " + g.to_string());
}

IntMatrix Tower::exponent_matrix(int t) const {
    const Node& n = node(t);
    if (!n.parent) throw std::invalid_argument("table " + n.vars->name() + " has no definitions");
    const std::size_t k = n.defs.size(), m = vars(*n.parent)->size();
    IntMatrix e(k, m);
    for (std::size_t i = 0; i < k; ++i) {
        auto l = n.defs[i].is_zero() ? std::nullopt : n.defs[i].as_laurent();
        if (!l || !l->coef.is_one())
            throw std::invalid_argument("definition " + n.vars->var(i) + " is not a monomial with coefficient 1");
        for (std::size_t j = 0; j < m; ++j) e.at(i, j) = l->exps[j];
    }
    return e;
}

}  // namespace s8inv
