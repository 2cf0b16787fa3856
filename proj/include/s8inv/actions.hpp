#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "s8inv/lattice.hpp"
#include "s8inv/perm.hpp"
#include "s8inv/polynomial.hpp"

namespace s8inv {

// A permutation of the root variables, optionally followed by the field
// automorphism zeta3 -> zeta3^2 on coefficients (the two commute).
struct GroupElement {
    Perm perm;
    bool conj = false;

    GroupElement operator*(const GroupElement& o) const { return {perm * o.perm, conj != o.conj}; }
    GroupElement inverse() const { return {perm.inverse(), conj}; }
    bool operator==(const GroupElement& o) const { return perm == o.perm && conj == o.conj; }
    bool operator<(const GroupElement& o) const { return std::tie(perm, conj) < std::tie(o.perm, o.conj); }
    std::string to_string() const { return perm.to_cycle_string() + (conj ? " conj" : ""); }
};

// g(z_j) = coefs[j] * prod_i z_i^{matrix(i,j)}: column j holds the image of z_j.
struct MonomialAction {
    IntMatrix matrix;
    std::vector<Scalar> coefs;
    bool is_pure() const;
};

class ActionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A forest of variable tables. Roots carry the permutation action; every
// other table is defined by rational functions over its parent.
class Tower {
public:
    explicit Tower(FieldTag field) : field_(field) {}

    FieldTag field() const { return field_; }

    int add_root(VarTablePtr vars);
    int add_derived(VarTablePtr vars, int parent, std::vector<RatFunc> defs);
    // A table whose variables are the chosen parent variables.
    int add_subset(std::string name, int parent, const std::vector<std::size_t>& indices);

    std::size_t size() const { return nodes_.size(); }
    const VarTablePtr& vars(int t) const { return node(t).vars; }
    std::optional<int> parent(int t) const;
    const std::vector<RatFunc>& defs(int t) const { return node(t).defs; }
    bool is_independent(int t) const { return node(t).independent; }
    bool is_subset(int t) const { return node(t).subset; }
    int depth(int t) const { return node(t).depth; }
    std::optional<int> find(std::string_view name) const;
    bool is_ancestor_or_self(int a, int t) const;
    std::optional<int> common_ancestor(const std::vector<int>& tables) const;

    struct Value {
        RatFunc f;
        int level;
    };
    Value variable(int t, std::size_t i) const;
    Value definition(int t, std::size_t i) const;

    RatFunc lower(const RatFunc& f, int from, int to);
    // Variable i of table t written over the ancestor `to`.
    const RatFunc& lowered_variable(int t, std::size_t i, int to);

    // g applied to v; the result lives at the first level (v.level or below)
    // where the action of g is available.
    Value act(const GroupElement& g, const Value& v);
    // Equality in the function field: formal equality at some common level,
    // or inequality at an algebraically independent level.
    bool equal(const Value& a, const Value& b);

    // Images of the variables of t under g, as rational functions over t.
    std::optional<std::vector<RatFunc>> action_on(int t, const GroupElement& g);
    void register_action(int t, const GroupElement& g, std::vector<RatFunc> images);

    // Permutation of the variables of t induced by g, if g permutes them.
    std::optional<Perm> induced_permutation(int t, const GroupElement& g);
    bool fixes_all(int t, const GroupElement& g);

    std::optional<MonomialAction> monomial_action(int t, const GroupElement& g, std::string* why = nullptr);
    // Row i = exponent vector of definition i over the parent; coefficient 1 required.
    IntMatrix exponent_matrix(int t) const;

private:
    struct Node {
        VarTablePtr vars;
        std::optional<int> parent;
        std::vector<RatFunc> defs;
        std::unique_ptr<Substitution> down;
        bool independent = false;
        bool subset = false;
        int depth = 0;
    };
    const Node& node(int t) const;
    bool certify_independent(int t) const;
    std::optional<std::vector<RatFunc>> linear_action(int t, const GroupElement& g);
    std::optional<std::vector<RatFunc>> permutation_action(int t, const GroupElement& g);
    RatFunc apply_action(const RatFunc& f, int t, const GroupElement& g, const std::vector<RatFunc>& images) const;

    FieldTag field_;
    std::vector<Node> nodes_;
    std::map<std::pair<int, GroupElement>, std::vector<RatFunc>> registered_;
    std::map<std::pair<int, GroupElement>, std::optional<std::vector<RatFunc>>> action_cache_;
    std::map<std::tuple<int, std::size_t, int>, RatFunc> lowered_cache_;
};

// Solves sum_j c_j * basis[j] = v for vectors over a field; nullopt when v is
// outside the span or the basis is dependent.
std::optional<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& basis,
                                                const std::vector<Scalar>& v);
std::size_t scalar_rank(std::vector<std::vector<Scalar>> rows);

}  // namespace s8inv
