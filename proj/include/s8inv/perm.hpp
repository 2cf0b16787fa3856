#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "s8inv/polynomial.hpp"

namespace s8inv {

// Permutation of {1..n}, stored 0-based. Composition is (g*h)(i) = g(h(i)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<std::uint8_t> images);
    static Perm identity(std::size_t n);

    std::size_t degree() const { return img_.size(); }
    // 1-based in, 1-based out
    std::size_t operator()(std::size_t point) const { return std::size_t(img_.at(point - 1)) + 1; }
    const std::vector<std::uint8_t>& images() const { return img_; }

    Perm operator*(const Perm& h) const;
    Perm inverse() const;
    Perm pow(long e) const;
    bool is_identity() const;
    std::size_t order() const;

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    // e.g. "(1,2)(3,4)"; "()" for the identity
    std::string to_cycle_string() const;

private:
    std::vector<std::uint8_t> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const;
};

// Cycle notation "(1,2,3)(4,5)"; adjacent cycles are multiplied with the
// composition above.  "()" and "id" denote the identity.
Perm parse_cycles(std::string_view text, std::size_t n);

using PermEnv = std::map<std::string, Perm, std::less<>>;

// Product of factors, each a cycle "(a,b,...)" or a name from env, each
// optionally raised to an integer power: "Phi^-1 Psi_t Phi", "kappa (5,6)(7,8)".
Perm parse_perm_expr(std::string_view text, std::size_t n, const PermEnv& env);

class PermGroup {
public:
    static constexpr std::size_t kDefaultCap = 50000;

    PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap = kDefaultCap);

    std::size_t degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }
    // Sorted, identity first.
    const std::vector<Perm>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    bool contains(const Perm& p) const { return members_.count(p) != 0; }
    bool is_subgroup_of(const PermGroup& g) const;
    bool same_elements(const PermGroup& g) const;

private:
    std::size_t degree_;
    std::vector<Perm> gens_;
    std::vector<Perm> elements_;
    std::unordered_set<Perm, PermHash> members_;
};

class GroupTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_normal(const PermGroup& h, const PermGroup& g);
bool is_transitive(const PermGroup& g);
std::vector<std::size_t> orbit(const PermGroup& g, std::size_t point);

// Imprimitive wreath product: blocks[b][k] is the point at position k of
// block b. The inner group acts on positions, the outer group on blocks.
PermGroup wreath_product(const PermGroup& inner, const PermGroup& outer,
                         const std::vector<std::vector<std::size_t>>& blocks);

// Some s in S_n with s*G*s^-1 = H, by exhaustive search.
std::optional<Perm> find_conjugator(const PermGroup& g, const PermGroup& h);

// x_i -> x_{g(i)} on a table whose size is the degree of g.
Poly perm_act(const Perm& g, const Poly& f);
RatFunc perm_act(const Perm& g, const RatFunc& f);

struct CatalogEntry {
    std::string name;
    std::vector<std::string> generators;  // perm expressions over the named elements
    std::vector<std::string> printed_generators;  // non-empty when the printed list was corrected
    std::size_t expected_order;
};

// The 48 transitive subgroups of S8 and their named elements.
const std::vector<CatalogEntry>& catalog();
const PermEnv& catalog_elements();
std::optional<CatalogEntry> catalog_lookup(std::string_view name);
PermGroup catalog_group(const CatalogEntry& entry);

// Text of the embedded catalog data file.
std::string_view catalog_source();

}  // namespace s8inv
