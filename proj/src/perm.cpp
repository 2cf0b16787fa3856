#include "s8inv/perm.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "s8inv/embedded.hpp"

namespace s8inv {

Perm::Perm(std::vector<std::uint8_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
        if (v >= img_.size() || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = true;
    }
}

Perm Perm::identity(std::size_t n) {
    if (n > 255) throw std::invalid_argument("degree too large");
    std::vector<std::uint8_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
}

Perm Perm::operator*(const Perm& h) const {
    if (h.degree() != degree()) throw std::invalid_argument("composing permutations of different degree");
    std::vector<std::uint8_t> r(img_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = img_[h.img_[i]];
    Perm p;
    p.img_ = std::move(r);
    return p;
}

Perm Perm::inverse() const {
    std::vector<std::uint8_t> r(img_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[img_[i]] = static_cast<std::uint8_t>(i);
    Perm p;
    p.img_ = std::move(r);
    return p;
}

Perm Perm::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Perm result = identity(degree()), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

std::size_t Perm::order() const {
    std::size_t o = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            ++len;
        }
        o = std::lcm(o, len);
    }
    return o;
}

std::string Perm::to_cycle_string() const {
    std::ostringstream os;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        os << "(";
        bool first = true;
        for (std::size_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            os << (first ? "" : ",") << j + 1;
            first = false;
        }
        os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm& p) const {
    std::size_t h = 0;
    for (auto v : p.images()) h = h * 131 + v;
    return h;
}

namespace {

Perm cycle_perm(const std::vector<std::size_t>& cyc, std::size_t n, std::size_t pos) {
    std::vector<std::uint8_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> seen(n + 1, false);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        std::size_t a = cyc[k];
        if (a < 1 || a > n) throw std::invalid_argument("point " + std::to_string(a) + " outside 1.." + std::to_string(n) + " at offset " + std::to_string(pos));
        if (seen[a]) throw std::invalid_argument("repeated point " + std::to_string(a) + " in cycle at offset " + std::to_string(pos));
        seen[a] = true;
        img[a - 1] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()] - 1);
    }
    return Perm(std::move(img));
}

struct PermLexer {
    std::string_view s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    long integer() {
        skip();
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw std::invalid_argument("expected integer at offset " + std::to_string(start));
        long v = std::stol(std::string(s.substr(start, i - start)));
        return neg ? -v : v;
    }
};

}  // namespace

Perm parse_cycles(std::string_view text, std::size_t n) { return parse_perm_expr(text, n, PermEnv{}); }

Perm parse_perm_expr(std::string_view text, std::size_t n, const PermEnv& env) {
    PermLexer lx{text};
    Perm result = Perm::identity(n);
    bool any = false;
    while (!lx.done()) {
        std::size_t pos = lx.i;
        Perm factor;
        char c = lx.s[lx.i];
        if (c == '(') {
            ++lx.i;
            std::vector<std::size_t> cyc;
            lx.skip();
            if (lx.i < lx.s.size() && lx.s[lx.i] == ')') {
                ++lx.i;
                factor = Perm::identity(n);
            } else {
                for (;;) {
                    long v = lx.integer();
                    if (v < 1) throw std::invalid_argument("point must be positive at offset " + std::to_string(pos));
                    cyc.push_back(static_cast<std::size_t>(v));
                    lx.skip();
                    if (lx.i < lx.s.size() && lx.s[lx.i] == ',') {
                        ++lx.i;
                        continue;
                    }
                    if (lx.i < lx.s.size() && lx.s[lx.i] == ')') {
                        ++lx.i;
                        break;
                    }
                    throw std::invalid_argument("malformed cycle at offset " + std::to_string(pos));
                }
                factor = cycle_perm(cyc, n, pos);
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = lx.i;
            while (lx.i < lx.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_' || lx.s[lx.i] == '\''))
                ++lx.i;
            std::string name(lx.s.substr(start, lx.i - start));
            if (name == "id") {
                factor = Perm::identity(n);
            } else {
                auto it = env.find(name);
                if (it == env.end()) throw std::invalid_argument("unknown permutation '" + name + "'");
                if (it->second.degree() != n)
                    throw std::invalid_argument("permutation '" + name + "' has degree " +
                                                std::to_string(it->second.degree()));
                factor = it->second;
            }
        } else {
            throw std::invalid_argument("unexpected '" + std::string(1, c) + "' in permutation at offset " +
                                        std::to_string(pos));
        }
        lx.skip();
        if (lx.i < lx.s.size() && lx.s[lx.i] == '^') {
            ++lx.i;
            factor = factor.pow(lx.integer());
        }
        result = result * factor;
        any = true;
    }
    if (!any) throw std::invalid_argument("empty permutation expression");
    return result;
}

// ---------------------------------------------------------------- groups

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap)
    : degree_(degree), gens_(std::move(generators)) {
    for (const auto& g : gens_)
        if (g.degree() != degree_) throw std::invalid_argument("generator of wrong degree");
    Perm id = Perm::identity(degree_);
    std::deque<Perm> queue{id};
    members_.insert(id);
    while (!queue.empty()) {
        Perm cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens_) {
            Perm next = g * cur;
            if (members_.insert(next).second) {
                if (members_.size() > cap)
                    throw GroupTooLarge("group closure exceeds " + std::to_string(cap) + " elements");
                queue.push_back(std::move(next));
            }
        }
    }
    elements_.assign(members_.begin(), members_.end());
    std::sort(elements_.begin(), elements_.end());
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
    if (g.degree() != degree_) return false;
    for (const auto& p : gens_)
        if (!g.contains(p)) return false;
    return true;
}

bool PermGroup::same_elements(const PermGroup& g) const {
    return g.degree() == degree_ && g.order() == order() && is_subgroup_of(g);
}

bool is_normal(const PermGroup& h, const PermGroup& g) {
    if (!h.is_subgroup_of(g)) return false;
    for (const auto& x : g.generators())
        for (const auto& y : h.generators())
            if (!h.contains(x * y * x.inverse())) return false;
    return true;
}

std::vector<std::size_t> orbit(const PermGroup& g, std::size_t point) {
    std::vector<bool> seen(g.degree() + 1, false);
    std::vector<std::size_t> out{point};
    seen[point] = true;
    for (std::size_t k = 0; k < out.size(); ++k)
        for (const auto& gen : g.generators()) {
            std::size_t q = gen(out[k]);
            if (!seen[q]) {
                seen[q] = true;
                out.push_back(q);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_transitive(const PermGroup& g) { return g.degree() == 0 || orbit(g, 1).size() == g.degree(); }

PermGroup wreath_product(const PermGroup& inner, const PermGroup& outer,
                         const std::vector<std::vector<std::size_t>>& blocks) {
    const std::size_t m = blocks.size();
    if (m != outer.degree()) throw std::invalid_argument("number of blocks must equal the degree of the outer group");
    const std::size_t k = inner.degree();
    std::size_t n = 0;
    std::vector<bool> seen;
    for (const auto& b : blocks) {
        if (b.size() != k) throw std::invalid_argument("block size must equal the degree of the inner group");
        for (auto p : b) {
            if (p < 1) throw std::invalid_argument("block points are 1-based");
            n = std::max(n, p);
            if (seen.size() <= p) seen.resize(p + 1, false);
            if (seen[p]) throw std::invalid_argument("blocks overlap");
            seen[p] = true;
        }
    }
    if (n != m * k) throw std::invalid_argument("blocks must partition 1..n");
    std::vector<Perm> gens;
    for (std::size_t b = 0; b < m; ++b)
        for (const auto& h : inner.generators()) {
            std::vector<std::uint8_t> img(n);
            std::iota(img.begin(), img.end(), 0);
            for (std::size_t pos = 0; pos < k; ++pos)
                img[blocks[b][pos] - 1] = static_cast<std::uint8_t>(blocks[b][h(pos + 1) - 1] - 1);
            gens.emplace_back(std::move(img));
        }
    for (const auto& o : outer.generators()) {
        std::vector<std::uint8_t> img(n);
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t pos = 0; pos < k; ++pos)
                img[blocks[b][pos] - 1] = static_cast<std::uint8_t>(blocks[o(b + 1) - 1][pos] - 1);
        gens.emplace_back(std::move(img));
    }
    return PermGroup(n, std::move(gens));
}

std::optional<Perm> find_conjugator(const PermGroup& g, const PermGroup& h) {
    if (g.degree() != h.degree() || g.order() != h.order()) return std::nullopt;
    std::vector<std::uint8_t> img(g.degree());
    std::iota(img.begin(), img.end(), 0);
    do {
        Perm s(img);
        Perm si = s.inverse();
        bool ok = true;
        for (const auto& x : g.generators())
            if (!h.contains(s * x * si)) {
                ok = false;
                break;
            }
        if (ok) return s;
    } while (std::next_permutation(img.begin(), img.end()));
    return std::nullopt;
}

Poly perm_act(const Perm& g, const Poly& f) {
    if (g.degree() != f.vars()->size())
        throw std::invalid_argument("permutation of degree " + std::to_string(g.degree()) + " acting on table " +
                                    f.vars()->name() + " of size " + std::to_string(f.vars()->size()));
    std::vector<std::size_t> image(g.degree());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = g.images()[i];
    return f.permute_variables(image);
}

RatFunc perm_act(const Perm& g, const RatFunc& f) { return RatFunc(perm_act(g, f.num()), perm_act(g, f.den())); }

// ---------------------------------------------------------------- catalog

namespace {

struct CatalogData {
    PermEnv elements;
    std::vector<CatalogEntry> entries;
};

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Splits on commas outside cycles.
std::vector<std::string> split_generators(const std::string& gens) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= gens.size(); ++k) {
        if (k < gens.size() && gens[k] == '(') ++depth;
        if (k < gens.size() && gens[k] == ')') --depth;
        if (k == gens.size() || (gens[k] == ',' && depth == 0)) {
            std::string g = trim(gens.substr(start, k - start));
            if (!g.empty()) out.push_back(g);
            start = k + 1;
        }
    }
    return out;
}

// Reads only the perm and group lines of the catalog file.
CatalogData load_catalog() {
    CatalogData d;
    std::istringstream in{std::string(catalog_source())};
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.rfind("perm ", 0) == 0) {
            auto eq = t.find('=');
            std::string name = trim(t.substr(5, eq - 5));
            d.elements[name] = parse_perm_expr(trim(t.substr(eq + 1)), 8, d.elements);
        } else if (t.rfind("group ", 0) == 0) {
            auto eq = t.find('=');
            CatalogEntry e;
            e.name = trim(t.substr(6, eq - 6));
            std::string rest = t.substr(eq + 1);
            auto ord = rest.find("expect_order=");
            if (ord == std::string::npos) continue;  // auxiliary groups
            e.expected_order = std::stoul(rest.substr(ord + 13));
            e.generators = split_generators(rest.substr(0, ord));
            // a corrected="..." list replaces the printed one
            auto cor = rest.find("corrected=\"");
            if (cor != std::string::npos) {
                auto close = rest.find('"', cor + 11);
                e.printed_generators = e.generators;
                e.generators = split_generators(rest.substr(cor + 11, close - cor - 11));
            }
            d.entries.push_back(std::move(e));
        }
    }
    return d;
}

const CatalogData& data() {
    static const CatalogData d = load_catalog();
    return d;
}

}  // namespace

std::string_view catalog_source() { return embedded_suite("catalog"); }

const std::vector<CatalogEntry>& catalog() { return data().entries; }
const PermEnv& catalog_elements() { return data().elements; }

std::optional<CatalogEntry> catalog_lookup(std::string_view name) {
    for (const auto& e : data().entries)
        if (e.name == name) return e;
    return std::nullopt;
}

PermGroup catalog_group(const CatalogEntry& entry) {
    std::vector<Perm> gens;
    for (const auto& g : entry.generators) gens.push_back(parse_perm_expr(g, 8, catalog_elements()));
    return PermGroup(8, std::move(gens));
}

}  // namespace s8inv
