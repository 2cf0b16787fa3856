#include "s8inv/suite.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "s8inv/actions.hpp"
#include "s8inv/embedded.hpp"
#include "s8inv/expr.hpp"
#include "s8inv/lattice.hpp"
#include "s8inv/perm.hpp"

namespace s8inv {

std::string_view status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::FlaggedDiscrepancy: return "flagged-discrepancy";
    }
    return "fail";
}

std::size_t SuiteReport::unexpected() const {
    return std::size_t(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.expected; }));
}

std::size_t SuiteReport::count(CheckStatus s) const {
    return std::size_t(std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"id", c.id}, {"paper_ref", c.paper_ref}, {"status", status_name(c.status)}, {"detail", c.detail}});
    return {{"suite", suite}, {"checks", std::move(arr)}};
}

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
        os << "  [" << status_name(c.status) << "] " << c.id;
        if (!c.expected) os << " (UNEXPECTED)";
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
    }
    os << "  " << checks.size() << " checks, " << count(CheckStatus::Pass) << " pass, " << count(CheckStatus::Fail)
       << " fail, " << count(CheckStatus::FlaggedDiscrepancy) << " flagged, " << unexpected() << " unexpected\n";
    return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// Splits on `sep` outside parentheses and brackets.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

// Position of a whole-word keyword surrounded by spaces, searching from the right.
std::size_t find_word(std::string_view s, std::string_view w) {
    std::string pat = " " + std::string(w) + " ";
    std::string padded = " " + std::string(s) + " ";
    auto p = padded.rfind(pat);
    return p == std::string::npos ? std::string::npos : p;
}

std::pair<std::string, std::string> split_word(std::string_view s, std::string_view w) {
    auto p = find_word(s, w);
    if (p == std::string::npos) return {trim(s), ""};
    return {trim(s.substr(0, p)), trim(s.substr(std::min(s.size(), p + w.size())))};
}

std::pair<std::string, std::string> split_at(std::string_view s, std::string_view sep) {
    auto p = s.find(sep);
    if (p == std::string_view::npos) return {trim(s), ""};
    return {trim(s.substr(0, p)), trim(s.substr(p + sep.size()))};
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

const std::regex& quoted_option() {
    static const std::regex re(R"re((\w+)="([^"]*)")re");
    return re;
}

const std::regex& plain_option() {
    static const std::regex re(R"re(\b(id|expect|elem|field|degree|expect_order|blocks|order)=([^\s"]+))re");
    return re;
}

Statement make_statement(std::string text, std::size_t line) {
    Statement st;
    st.line = line;
    for (const std::regex* re : {&quoted_option(), &plain_option()}) {
        std::string rest;
        auto begin = std::sregex_iterator(text.begin(), text.end(), *re);
        std::size_t last = 0;
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            const auto& m = *it;
            if (st.options.count(m[1].str())) throw SuiteError("duplicate option '" + m[1].str() + "'", line);
            st.options[m[1].str()] = m[2].str();
            rest += text.substr(last, std::size_t(m.position(0)) - last);
            last = std::size_t(m.position(0) + m.length(0));
        }
        rest += text.substr(last);
        text = rest;
    }
    text = trim(text);
    auto sp = text.find_first_of(" \t");
    st.keyword = text.substr(0, sp);
    st.body = sp == std::string::npos ? "" : trim(text.substr(sp));
    return st;
}

}  // namespace

SuiteDocument parse_suite(std::string_view text) {
    SuiteDocument doc;
    std::istringstream is{std::string(text)};
    std::string raw, acc;
    std::size_t lineno = 0, start = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        std::string t = trim(line);
        if (acc.empty()) start = lineno;
        if (!t.empty() && t.back() == '\\') {
            acc += t.substr(0, t.size() - 1) + " ";
            continue;
        }
        acc += t;
        if (trim(acc).empty()) {
            acc.clear();
            continue;
        }
        doc.statements.push_back(make_statement(acc, start));
        acc.clear();
    }
    if (!trim(acc).empty()) doc.statements.push_back(make_statement(acc, start));
    if (doc.statements.empty() || doc.statements[0].keyword != "suite")
        throw SuiteError("a suite file must start with a 'suite' line", doc.statements.empty() ? 0 : doc.statements[0].line);
    auto w = words(doc.statements[0].body);
    if (w.size() != 1) throw SuiteError("expected 'suite <name>'", doc.statements[0].line);
    doc.name = w[0];
    return doc;
}

namespace {

std::string check_kind(const Statement& st) {
    auto sp = st.body.find(' ');
    return st.body.substr(0, sp);
}

std::string check_rest(const Statement& st) {
    auto sp = st.body.find(' ');
    return sp == std::string::npos ? "" : trim(st.body.substr(sp));
}

}  // namespace

std::vector<std::string> suite_expressions(const SuiteDocument& doc) {
    std::vector<std::string> out;
    auto add_list = [&](const std::string& s) {
        for (auto& e : split_top(s, ',')) out.push_back(e);
    };
    for (const auto& st : doc.statements) {
        if (st.keyword == "def") {
            out.push_back(split_at(st.body, "=").second);
        } else if (st.keyword == "check") {
            std::string kind = check_kind(st), rest = check_rest(st);
            if (kind == "table") {
                auto [head, imgs] = split_at(rest, "images =");
                auto [printed, corrected] = split_word(imgs, "corrected =");
                add_list(printed);
                if (!corrected.empty()) add_list(corrected);
            } else if (kind == "identity" || kind == "image") {
                auto [l, r] = split_at(rest, "==");
                out.push_back(l);
                out.push_back(r);
            } else if (kind == "invariance") {
                out.push_back(split_word(rest, "under").first);
            } else if (kind == "distinct") {
                add_list(rest);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- running

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string shorten(std::string s, std::size_t n = 160) {
    if (s.size() > n) s = s.substr(0, n) + "...";
    return s;
}

bool parse_bool(const std::string& s, std::size_t line) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw SuiteError("expected true or false, got '" + s + "'", line);
}

std::size_t parse_size(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SuiteError("expected a non-negative integer, got '" + s + "'", line);
    }
}

struct GroupInfo {
    PermGroup group;
    std::vector<GroupElement> gens;
};

struct Section {
    std::string label;
    FieldTag field;
    std::size_t degree;
    std::unique_ptr<Tower> tower;

    struct Pending {
        std::string name;
        std::vector<std::string> vars;
        std::optional<int> parent;
        std::vector<std::optional<std::string>> defs;
        std::size_t line = 0;
    };
    std::optional<Pending> pending;
};

class Runner {
public:
    Runner(const SuiteDocument& doc, const RunOptions& opts) : doc_(doc), opts_(opts) {}

    SuiteReport run();

private:
    // declarations
    void start_section(const Statement& st, bool header);
    void declare_vars(const Statement& st);
    void declare_subset(const Statement& st);
    void declare_def(const Statement& st);
    void finalize_pending();
    void declare_perm(const Statement& st);
    void declare_element(const Statement& st);
    void declare_group(const Statement& st);
    void declare_wreath(const Statement& st);
    void declare_matrix(const Statement& st);
    void declare_mod3(const Statement& st);
    void run_check(const Statement& st);

    // lookups
    Section& sec();
    Tower& tower() { return *sec().tower; }
    int table(const std::string& name, std::size_t line);
    GroupElement element(const std::string& text, std::size_t line);
    const GroupInfo& group_or_element(const std::string& text, std::size_t line);
    const GroupInfo& group(const std::string& name, std::size_t line);
    std::pair<int, std::size_t> resolve(const std::string& name, std::optional<int> context, std::size_t line);
    Tower::Value eval(const std::string& text, std::optional<int> context, std::size_t line);
    Perm named_cycles(int t, const std::string& text, std::size_t line);

    // checks
    Outcome check_table(const Statement& st, int y, const GroupElement& g, const std::string& images);
    Outcome check_invariance(const Statement& st, const std::string& rest);
    Outcome check_monomial_kind(const Statement& st, const std::string& kind, const std::string& rest);
    Outcome check_kernel_kind(const Statement& st, const std::string& kind, const std::string& rest);
    Outcome check_induced_kind(const Statement& st, const std::string& kind, const std::string& rest);
    Outcome check_group_kind(const Statement& st, const std::string& kind, const std::string& rest);
    Outcome evaluate_check(const Statement& st, const std::string& kind, const std::string& rest);

    void record(CheckResult r);
    std::string make_id(const Statement& st, const std::string& kind, const std::string& rest);

    const SuiteDocument& doc_;
    RunOptions opts_;
    FieldTag field_ = FieldTag::Q;
    std::size_t degree_ = 8;
    std::vector<Section> sections_;
    PermEnv perms_;
    std::map<std::string, GroupElement, std::less<>> elements_;
    std::map<std::string, GroupInfo, std::less<>> groups_;
    std::map<std::string, GroupInfo> adhoc_groups_;
    MatrixEnv matrices_;
    std::vector<std::pair<long, long>> mod3_vectors_;
    std::set<std::string> ids_;
    std::map<std::string, std::size_t> kind_counts_;
    SuiteReport report_;
    bool stop_ = false;
};

Section& Runner::sec() {
    if (sections_.empty()) throw SuiteError("no section");
    return sections_.back();
}

void Runner::start_section(const Statement& st, bool header) {
    finalize_pending();
    Section s;
    s.label = header ? doc_.name : trim(st.body);
    s.field = field_;
    s.degree = degree_;
    if (auto f = st.options.find("field"); f != st.options.end()) {
        auto tag = parse_field_tag(f->second);
        if (!tag) throw SuiteError("unknown field '" + f->second + "'", st.line);
        s.field = *tag;
    }
    if (auto d = st.options.find("degree"); d != st.options.end()) s.degree = parse_size(d->second, st.line);
    if (header) {
        field_ = s.field;
        degree_ = s.degree;
    }
    s.tower = std::make_unique<Tower>(s.field);
    sections_.push_back(std::move(s));
}

int Runner::table(const std::string& name, std::size_t line) {
    finalize_pending();
    auto t = tower().find(name);
    if (!t) throw SuiteError("unknown table '" + name + "'", line);
    return *t;
}

void Runner::declare_vars(const Statement& st) {
    finalize_pending();
    auto [name, rest] = split_at(st.body, "=");
    auto [vars, parent] = split_word(rest, "over");
    Section::Pending p;
    p.name = name;
    p.vars = words(vars);
    p.line = st.line;
    if (p.vars.empty()) throw SuiteError("table '" + name + "' has no variables", st.line);
    if (!parent.empty()) p.parent = table(parent, st.line);
    p.defs.resize(p.vars.size());
    if (!p.parent) {
        tower().add_root(make_table(p.name, p.vars));
        return;
    }
    sec().pending = std::move(p);
}

void Runner::declare_subset(const Statement& st) {
    finalize_pending();
    auto [name, rest] = split_at(st.body, "=");
    auto [parent, vars] = split_at(rest, ":");
    int pt = table(parent, st.line);
    std::vector<std::size_t> idx;
    for (const auto& v : words(vars)) {
        auto i = tower().vars(pt)->index_of(v);
        if (!i) throw SuiteError("'" + v + "' is not a variable of " + parent, st.line);
        idx.push_back(*i);
    }
    tower().add_subset(name, pt, idx);
}

void Runner::declare_def(const Statement& st) {
    auto [lhs, expr] = split_at(st.body, "=");
    auto dot = lhs.find('.');
    if (dot == std::string::npos) throw SuiteError("definition target must be table.var", st.line);
    std::string t = lhs.substr(0, dot), v = lhs.substr(dot + 1);
    auto& p = sec().pending;
    if (!p || p->name != t) throw SuiteError("definitions for '" + t + "' must follow its vars line", st.line);
    auto it = std::find(p->vars.begin(), p->vars.end(), v);
    if (it == p->vars.end()) throw SuiteError("'" + v + "' is not a variable of " + t, st.line);
    auto& slot = p->defs[std::size_t(it - p->vars.begin())];
    if (slot) throw SuiteError("'" + lhs + "' defined twice", st.line);
    slot = expr;
}

void Runner::finalize_pending() {
    if (sections_.empty() || !sec().pending) return;
    Section::Pending p = std::move(*sec().pending);
    sec().pending.reset();
    const VarTablePtr& pv = tower().vars(*p.parent);
    const std::string pname = pv->name();
    std::vector<RatFunc> defs;
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
        if (!p.defs[i]) throw SuiteError("no definition for " + p.name + "." + p.vars[i], p.line);
        try {
            auto ast = parse_expr_ast(*p.defs[i]);
            defs.push_back(evaluate(*ast, pv, sec().field, [&](const std::string& n) -> std::optional<std::size_t> {
                auto dot = n.find('.');
                if (dot != std::string::npos) {
                    if (n.substr(0, dot) != pname) return std::nullopt;
                    return pv->index_of(n.substr(dot + 1));
                }
                return pv->index_of(n);
            }));
        } catch (const ParseError& e) {
            throw SuiteError("definition of " + p.name + "." + p.vars[i] + " over " + pname + ": " + e.what(), p.line);
        } catch (const FieldError& e) {
            throw SuiteError("definition of " + p.name + "." + p.vars[i] + ": " + e.what(), p.line);
        }
    }
    tower().add_derived(make_table(p.name, p.vars), *p.parent, std::move(defs));
}

void Runner::declare_perm(const Statement& st) {
    auto [name, expr] = split_at(st.body, "=");
    std::size_t n = sections_.empty() ? degree_ : sec().degree;
    if (auto d = st.options.find("degree"); d != st.options.end()) n = parse_size(d->second, st.line);
    if (perms_.count(name) || elements_.count(name)) throw SuiteError("'" + name + "' declared twice", st.line);
    try {
        perms_[name] = parse_perm_expr(expr, n, perms_);
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), st.line);
    }
}

void Runner::declare_element(const Statement& st) {
    auto [name, expr] = split_at(st.body, "=");
    auto w = words(expr);
    bool conj = !w.empty() && w.back() == "conj";
    if (conj) expr = trim(expr.substr(0, expr.rfind("conj")));
    if (perms_.count(name) || elements_.count(name)) throw SuiteError("'" + name + "' declared twice", st.line);
    try {
        elements_[name] = GroupElement{parse_perm_expr(expr, sections_.empty() ? degree_ : sec().degree, perms_), conj};
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), st.line);
    }
}

GroupElement Runner::element(const std::string& text, std::size_t line) {
    if (auto it = elements_.find(text); it != elements_.end()) return it->second;
    try {
        return GroupElement{parse_perm_expr(text, sections_.empty() ? degree_ : sec().degree, perms_), false};
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), line);
    }
}

void Runner::declare_group(const Statement& st) {
    auto [name, printed_text] = split_at(st.body, "=");
    if (groups_.count(name)) throw SuiteError("group '" + name + "' declared twice", st.line);
    std::size_t n = sections_.empty() ? degree_ : sec().degree;
    if (auto d = st.options.find("degree"); d != st.options.end()) n = parse_size(d->second, st.line);
    auto parse_gens = [&](const std::string& text) {
        std::vector<Perm> gens;
        for (const auto& g : split_top(text, ',')) {
            if (g.empty()) continue;
            if (auto it = elements_.find(g); it != elements_.end()) {
                if (it->second.conj) throw SuiteError("group generators must be permutations", st.line);
                gens.push_back(it->second.perm);
                continue;
            }
            try {
                gens.push_back(parse_perm_expr(g, n, perms_));
            } catch (const std::invalid_argument& e) {
                throw SuiteError(e.what(), st.line);
            }
        }
        return gens;
    };
    std::vector<Perm> gens = parse_gens(printed_text);
    std::optional<PermGroup> printed;
    auto corrected = st.options.find("corrected");
    if (corrected != st.options.end()) {
        if (st.options.count("expect") == 0 || st.options.count("oracle") == 0)
            throw SuiteError("a corrected generator list needs expect=fail and oracle=", st.line);
        printed.emplace(n, gens);
        gens = parse_gens(corrected->second);
    }
    std::vector<GroupElement> elems;
    for (const auto& p : gens) elems.push_back({p, false});
    groups_.emplace(name, GroupInfo{PermGroup(n, gens), elems});
    auto o = st.options.find("expect_order");
    if (o == st.options.end()) return;
    std::size_t want = parse_size(o->second, st.line);
    auto ref = st.options.find("ref");
    if (ref == st.options.end()) throw SuiteError("check without ref", st.line);
    std::size_t got = groups_.at(name).group.order();
    CheckResult r;
    r.id = "order:" + name;
    r.paper_ref = ref->second;
    if (printed) {
        std::size_t p = printed->order();
        bool flagged = p != want && got == want;
        r.status = flagged ? CheckStatus::FlaggedDiscrepancy : CheckStatus::Fail;
        r.expected = flagged;
        r.detail = "printed generators give order " + std::to_string(p) + "; corrected generators " + corrected->second +
                   " give order " + std::to_string(got);
        if (auto note = st.options.find("note"); note != st.options.end()) r.detail += "; " + note->second;
    } else {
        r.status = got == want ? CheckStatus::Pass : CheckStatus::Fail;
        r.expected = got == want;
        r.detail = "order " + std::to_string(got) + (got == want ? "" : ", expected " + std::to_string(want));
    }
    record(std::move(r));
}

void Runner::declare_wreath(const Statement& st) {
    auto [name, rest] = split_at(st.body, "=");
    auto w = words(rest);
    if (w.size() != 3 || w[1] != "wr") throw SuiteError("expected 'wreath <name> = <inner> wr <outer>'", st.line);
    auto b = st.options.find("blocks");
    if (b == st.options.end()) throw SuiteError("wreath needs blocks=", st.line);
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& blk : split_top(b->second, '|')) {
        std::vector<std::size_t> pts;
        for (const auto& p : split_top(blk, ',')) pts.push_back(parse_size(p, st.line));
        blocks.push_back(std::move(pts));
    }
    try {
        PermGroup g = wreath_product(group(w[0], st.line).group, group(w[2], st.line).group, blocks);
        std::vector<GroupElement> gens;
        for (const auto& p : g.generators()) gens.push_back({p, false});
        groups_.emplace(name, GroupInfo{std::move(g), std::move(gens)});
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), st.line);
    }
}

void Runner::declare_matrix(const Statement& st) {
    auto [name, lit] = split_at(st.body, "=");
    try {
        matrices_[name] = parse_int_matrix(lit);
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), st.line);
    }
}

void Runner::declare_mod3(const Statement& st) {
    static const std::regex vec(R"re(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))re");
    mod3_vectors_.clear();
    for (auto it = std::sregex_iterator(st.body.begin(), st.body.end(), vec); it != std::sregex_iterator(); ++it)
        mod3_vectors_.emplace_back(std::stol((*it)[1].str()), std::stol((*it)[2].str()));
}

const GroupInfo& Runner::group(const std::string& name, std::size_t line) {
    auto it = groups_.find(name);
    if (it == groups_.end()) throw SuiteError("unknown group '" + name + "'", line);
    return it->second;
}

const GroupInfo& Runner::group_or_element(const std::string& text, std::size_t line) {
    if (auto it = groups_.find(text); it != groups_.end()) return it->second;
    GroupElement g = element(text, line);
    std::string key = text;
    auto it = adhoc_groups_.find(key);
    if (it == adhoc_groups_.end())
        it = adhoc_groups_.emplace(key, GroupInfo{PermGroup(g.perm.degree(), {g.perm}), {g}}).first;
    return it->second;
}

std::pair<int, std::size_t> Runner::resolve(const std::string& name, std::optional<int> context, std::size_t line) {
    Tower& tw = tower();
    auto dot = name.find('.');
    if (dot != std::string::npos) {
        int t = table(name.substr(0, dot), line);
        auto i = tw.vars(t)->index_of(name.substr(dot + 1));
        if (!i) throw SuiteError("unknown variable '" + name + "'", line);
        return {t, *i};
    }
    for (std::optional<int> c = context; c; c = tw.parent(*c))
        if (auto i = tw.vars(*c)->index_of(name)) return {*c, *i};
    std::optional<std::pair<int, std::size_t>> found;
    for (int t = 0; t < int(tw.size()); ++t) {
        if (tw.is_subset(t)) continue;
        if (auto i = tw.vars(t)->index_of(name)) {
            if (found) throw SuiteError("variable '" + name + "' is ambiguous; qualify it as table." + name, line);
            found = std::make_pair(t, *i);
        }
    }
    if (!found) throw SuiteError("unknown variable '" + name + "'", line);
    return *found;
}

Tower::Value Runner::eval(const std::string& text, std::optional<int> context, std::size_t line) {
    finalize_pending();
    ExprPtr ast;
    try {
        ast = parse_expr_ast(text);
    } catch (const ParseError& e) {
        throw SuiteError("in '" + text + "': " + e.what(), line);
    }
    std::vector<std::string> names;
    collect_variables(*ast, names);
    std::map<std::string, std::pair<int, std::size_t>> where;
    std::vector<int> tables;
    for (const auto& n : names) {
        auto r = resolve(n, context, line);
        where[n] = r;
        tables.push_back(r.first);
    }
    Tower& tw = tower();
    int level;
    if (tables.empty()) {
        level = context ? *context : 0;
    } else {
        auto c = tw.common_ancestor(tables);
        if (!c) throw SuiteError("'" + text + "' mixes unrelated tables", line);
        level = *c;
    }
    const VarTablePtr& lv = tw.vars(level);
    try {
        RatFunc f = evaluate_leaves(*ast, lv, sec().field, [&](const ExprNode& leaf) {
            auto [t, i] = where.at(leaf.name);
            return tw.lowered_variable(t, i, level);
        });
        return {std::move(f), level};
    } catch (const ParseError& e) {
        throw SuiteError("in '" + text + "': " + e.what(), line);
    }
}

Perm Runner::named_cycles(int t, const std::string& text, std::size_t line) {
    const VarTablePtr& v = tower().vars(t);
    std::string numeric;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t s = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
                ++i;
            std::string name = text.substr(s, i - s);
            if (name == "id") {
                numeric += "()";
                continue;
            }
            auto idx = v->index_of(name);
            if (!idx) throw SuiteError("'" + name + "' is not a variable of " + v->name(), line);
            numeric += std::to_string(*idx + 1);
        } else {
            numeric += c;
            ++i;
        }
    }
    try {
        return parse_cycles(numeric, v->size());
    } catch (const std::invalid_argument& e) {
        throw SuiteError(e.what(), line);
    }
}

// ---------------------------------------------------------------- checks

Outcome Runner::check_table(const Statement& st, int y, const GroupElement& g, const std::string& images) {
    Tower& tw = tower();
    auto exprs = split_top(images, ',');
    const auto& yv = tw.vars(y);
    if (exprs.size() != yv->size())
        return {false, std::to_string(exprs.size()) + " images for " + std::to_string(yv->size()) + " variables"};
    std::vector<RatFunc> own;
    bool all_own = true;
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        Tower::Value claimed = eval(exprs[i], y, st.line);
        if (claimed.level == y)
            own.push_back(claimed.f);
        else
            all_own = false;
        try {
            Tower::Value direct = tw.act(g, tw.definition(y, i));
            if (!tw.equal(direct, claimed))
                bad.push_back(yv->var(i) + " -> " + exprs[i] + " (actual image " + shorten(direct.f.to_string(), 120) +
                              " over " + tw.vars(direct.level)->name() + ")");
        } catch (const FieldError& e) {
            bad.push_back(yv->var(i) + ": vanishing denominator (" + e.what() + ")");
        }
    }
    if (!bad.empty()) {
        std::string d = "mismatch: ";
        for (std::size_t i = 0; i < bad.size(); ++i) d += (i ? "; " : "") + bad[i];
        return {false, d};
    }
    if (all_own) tw.register_action(y, g, std::move(own));
    return {true, std::to_string(exprs.size()) + " images verified"};
}

Outcome Runner::check_invariance(const Statement& st, const std::string& rest) {
    auto [expr, under] = split_word(rest, "under");
    if (under.empty()) throw SuiteError("expected '<expr> under <group>'", st.line);
    const GroupInfo& gi = group_or_element(under, st.line);
    Tower::Value v = eval(expr, std::nullopt, st.line);
    for (const auto& g : gi.gens) {
        if (!tower().equal(tower().act(g, v), v)) return {false, "moved by " + g.to_string()};
    }
    return {true, "fixed by " + std::to_string(gi.gens.size()) + " generators"};
}

Outcome Runner::check_monomial_kind(const Statement& st, const std::string& kind, const std::string& rest) {
    Tower& tw = tower();
    if (kind == "degree") {
        auto [y, n] = split_at(rest, "=");
        IntMatrix e = tw.exponent_matrix(table(y, st.line));
        if (e.rows() != e.cols()) return {false, "exponent matrix is not square"};
        mpz_class d = abs(det_bareiss(e));
        std::size_t want = parse_size(n, st.line);
        return {d == want, "|det| = " + d.get_str() + (d == want ? "" : ", expected " + n)};
    }
    if (kind == "word") {
        int y = table(rest, st.line);
        auto e = st.options.find("elem");
        auto w = st.options.find("word");
        if (e == st.options.end() || w == st.options.end()) throw SuiteError("word check needs elem= and word=", st.line);
        std::string why;
        auto ma = tw.monomial_action(y, element(e->second, st.line), &why);
        if (!ma) return {false, "not monomial: " + why};
        IntMatrix want;
        try {
            want = matrix_word(w->second, matrices_, tw.vars(y)->size());
        } catch (const std::invalid_argument& ex) {
            throw SuiteError(ex.what(), st.line);
        }
        bool ok = ma->matrix == want;
        return {ok, "A = " + ma->matrix.to_string() + (ok ? "" : ", word gives " + want.to_string())};
    }
    auto [head, value] = split_at(rest, "=");
    auto [y_name, under] = split_word(head, "under");
    int y = table(y_name, st.line);
    const GroupInfo& gi = group_or_element(under, st.line);
    std::vector<MonomialAction> acts;
    for (const auto& g : gi.gens) {
        std::string why;
        auto ma = tw.monomial_action(y, g, &why);
        if (!ma) return {false, g.to_string() + " is not monomial: " + why};
        acts.push_back(std::move(*ma));
    }
    if (kind == "monomial") {
        for (std::size_t i = 0; i < acts.size(); ++i) {
            mpz_class d = det_bareiss(acts[i].matrix);
            if (abs(d) != 1) return {false, gi.gens[i].to_string() + " has det " + d.get_str()};
        }
        return {true, std::to_string(acts.size()) + " generators act monomially"};
    }
    if (kind == "pure") {
        bool want = parse_bool(value, st.line);
        std::string impure;
        for (std::size_t i = 0; i < acts.size(); ++i)
            if (!acts[i].is_pure() && impure.empty()) impure = gi.gens[i].to_string();
        bool pure = impure.empty();
        return {pure == want, pure ? "all coefficients are 1" : "coefficient != 1 for " + impure};
    }
    if (kind == "matrix-group") {
        std::vector<IntMatrix> named;
        for (const auto& m : words(value)) {
            auto it = matrices_.find(m);
            if (it == matrices_.end()) throw SuiteError("unknown matrix '" + m + "'", st.line);
            named.push_back(it->second);
        }
        std::vector<IntMatrix> got;
        for (const auto& a : acts) got.push_back(a.matrix);
        auto g1 = matrix_group_elements(got, 10000), g2 = matrix_group_elements(named, 10000);
        if (!g1 || !g2) return {false, "matrix group too large"};
        bool ok = *g1 == *g2;
        return {ok, "image of order " + std::to_string(g1->size()) + (ok ? " equals" : " differs from") +
                        " the named group of order " + std::to_string(g2->size())};
    }
    throw SuiteError("unknown check kind '" + kind + "'", st.line);
}

Outcome Runner::check_kernel_kind(const Statement& st, const std::string& kind, const std::string& rest) {
    Tower& tw = tower();
    auto [head, value] = split_at(rest, "=");
    auto [y_and_g, modulo] = split_word(head, "modulo");
    auto [y_name, under] = split_word(y_and_g, "under");
    int y = table(y_name, st.line);
    const GroupInfo& gi = group_or_element(under, st.line);
    if (kind == "stable") {
        for (const auto& g : gi.gens) {
            if (tw.action_on(y, g)) continue;
            std::string why;
            if (tw.monomial_action(y, g, &why)) continue;
            return {false, "no action of " + g.to_string() + " on " + y_name + " found: " + why};
        }
        return {true, y_name + " is mapped into itself by " + std::to_string(gi.gens.size()) + " generators"};
    }
    std::vector<Perm> kernel;
    if (kind == "kernel") {
        // matrices of all elements from those of the generators, A(gh) = A(g)A(h)
        std::map<Perm, IntMatrix> mats;
        std::vector<std::pair<Perm, IntMatrix>> gens;
        for (const auto& g : gi.gens) {
            std::string why;
            auto ma = tw.monomial_action(y, g, &why);
            if (!ma) return {false, g.to_string() + " is not monomial: " + why};
            gens.emplace_back(g.perm, ma->matrix);
        }
        const std::size_t k = tw.vars(y)->size();
        std::vector<Perm> queue{Perm::identity(gi.group.degree())};
        mats.emplace(queue[0], IntMatrix::identity(k));
        for (std::size_t q = 0; q < queue.size(); ++q) {
            Perm s = queue[q];
            IntMatrix a = mats.at(s);
            for (const auto& [g, m] : gens) {
                Perm gs = g * s;
                if (mats.count(gs)) continue;
                mats.emplace(gs, m * a);
                queue.push_back(gs);
            }
        }
        for (const auto& [p, m] : mats)
            if (m.is_identity()) kernel.push_back(p);
    } else {
        for (const auto& p : gi.group.elements())
            if (tw.fixes_all(y, GroupElement{p, false})) kernel.push_back(p);
    }
    std::string got = "kernel of order " + std::to_string(kernel.size());
    std::optional<std::string> target = modulo.empty() ? std::nullopt : std::optional<std::string>(modulo);
    if (kind == "kernel") {
        if (auto o = st.options.find("order"); o != st.options.end()) {
            std::size_t want = parse_size(o->second, st.line);
            std::string gens;
            for (std::size_t i = 0; i < kernel.size() && i < 8; ++i) gens += (i ? " " : "") + kernel[i].to_cycle_string();
            return {kernel.size() == want, got + " {" + gens + (kernel.size() > 8 ? " ..." : "") + "}"};
        }
        target = value;
    }
    if (!target) {
        bool ok = kernel.size() == 1;
        return {ok, ok ? "faithful on " + std::to_string(gi.group.order()) + " elements" : got};
    }
    const PermGroup& n = group(*target, st.line).group;
    bool ok = kernel == n.elements();
    return {ok, got + (ok ? " equals " : " differs from ") + *target};
}

Outcome Runner::check_induced_kind(const Statement& st, const std::string& kind, const std::string& rest) {
    Tower& tw = tower();
    if (kind == "induced") {
        auto [y_name, cycles] = split_at(rest, "==");
        int y = table(y_name, st.line);
        auto e = st.options.find("elem");
        if (e == st.options.end()) throw SuiteError("induced check needs elem=", st.line);
        Perm want = named_cycles(y, cycles, st.line);
        auto got = tw.induced_permutation(y, element(e->second, st.line));
        if (!got) return {false, "not a permutation of " + y_name};
        return {*got == want, "induces " + got->to_cycle_string()};
    }
    auto [head, value] = split_at(rest, "=");
    auto [y_name, under] = split_word(head, "under");
    int y = table(y_name, st.line);
    const GroupInfo& gi = group_or_element(under, st.line);
    std::vector<Perm> gens;
    for (const auto& g : gi.gens) {
        auto p = tw.induced_permutation(y, g);
        if (!p) return {false, g.to_string() + " does not permute " + y_name};
        gens.push_back(*p);
    }
    PermGroup img(tw.vars(y)->size(), gens);
    if (kind == "induced-order") {
        std::size_t want = parse_size(value, st.line);
        return {img.order() == want, "induced group of order " + std::to_string(img.order())};
    }
    if (kind == "induced-transitive") {
        bool want = value.empty() ? true : parse_bool(value, st.line);
        bool t = is_transitive(img);
        return {t == want, std::string(t ? "transitive" : "intransitive") + " on " + std::to_string(img.degree()) + " points"};
    }
    throw SuiteError("unknown check kind '" + kind + "'", st.line);
}

Outcome Runner::check_group_kind(const Statement& st, const std::string& kind, const std::string& rest) {
    if (kind == "order") {
        auto [g, n] = split_at(rest, "=");
        std::size_t got = group(g, st.line).group.order(), want = parse_size(n, st.line);
        return {got == want, "order " + std::to_string(got)};
    }
    if (kind == "transitive") {
        auto [g, v] = split_at(rest, "=");
        bool want = v.empty() ? true : parse_bool(v, st.line);
        bool t = is_transitive(group(g, st.line).group);
        return {t == want, t ? "transitive" : "intransitive"};
    }
    if (kind == "normal" || kind == "subgroup") {
        auto [pair, v] = split_at(rest, "=");
        auto [h, g] = split_word(pair, "in");
        bool want = v.empty() ? true : parse_bool(v, st.line);
        const PermGroup& hg = group(h, st.line).group;
        const PermGroup& gg = group(g, st.line).group;
        bool sub = hg.is_subgroup_of(gg);
        bool holds = kind == "subgroup" ? sub : sub && is_normal(hg, gg);
        std::string d = !sub ? h + " is not a subgroup of " + g
                             : (kind == "subgroup" ? "subgroup" : (holds ? "normal" : "subgroup, not normal"));
        return {holds == want, d};
    }
    if (kind == "equal") {
        auto w = words(rest);
        if (w.size() != 2) throw SuiteError("expected 'equal <G> <H>'", st.line);
        const PermGroup& a = group(w[0], st.line).group;
        const PermGroup& b = group(w[1], st.line).group;
        if (a.same_elements(b)) return {true, "same " + std::to_string(a.order()) + " elements"};
        auto c = find_conjugator(a, b);
        return {false, c ? "equal only up to conjugation by " + c->to_cycle_string() : "not conjugate"};
    }
    if (kind == "perm-eq") {
        auto [l, r] = split_at(rest, "==");
        Perm a = element(l, st.line).perm, b = element(r, st.line).perm;
        return {a == b, a.to_cycle_string() + (a == b ? " == " : " != ") + b.to_cycle_string()};
    }
    if (kind == "mod3") {
        auto [lit, p] = split_at(rest, "==");
        IntMatrix m;
        try {
            m = parse_int_matrix(lit);
        } catch (const std::invalid_argument& e) {
            throw SuiteError(e.what(), st.line);
        }
        if (mod3_vectors_.size() != 8 || m.rows() != 2 || m.cols() != 2) throw SuiteError("mod3 check needs a 2x2 matrix and 8 labelled vectors", st.line);
        auto red = [](long v) { return ((v % 3) + 3) % 3; };
        std::vector<std::uint8_t> img(8);
        for (std::size_t i = 0; i < 8; ++i) {
            auto [a, b] = mod3_vectors_[i];
            long x = red(m.at(0, 0).get_si() * a + m.at(0, 1).get_si() * b);
            long y = red(m.at(1, 0).get_si() * a + m.at(1, 1).get_si() * b);
            std::optional<std::size_t> j;
            for (std::size_t k = 0; k < 8; ++k)
                if (red(mod3_vectors_[k].first) == x && red(mod3_vectors_[k].second) == y) j = k;
            if (!j) return {false, "image of vector " + std::to_string(i + 1) + " is not labelled"};
            img[i] = std::uint8_t(*j);
        }
        Perm got(img), want = element(p, st.line).perm;
        return {got == want, "induces " + got.to_cycle_string()};
    }
    if (kind == "matrix-order") {
        auto [names, n] = split_at(rest, "=");
        std::vector<IntMatrix> gens;
        for (const auto& m : words(names)) {
            auto it = matrices_.find(m);
            if (it == matrices_.end()) throw SuiteError("unknown matrix '" + m + "'", st.line);
            gens.push_back(it->second);
        }
        auto o = matrix_group_order(gens, 10000);
        std::size_t want = parse_size(n, st.line);
        if (!o) return {false, "group exceeds 10000 elements"};
        return {*o == want, "order " + std::to_string(*o)};
    }
    throw SuiteError("unknown check kind '" + kind + "'", st.line);
}

Outcome Runner::evaluate_check(const Statement& st, const std::string& kind, const std::string& rest) {
    Tower& tw = tower();
    if (kind == "invariance") return check_invariance(st, rest);
    if (kind == "identity") {
        auto [l, r] = split_at(rest, "==");
        Tower::Value a = eval(l, std::nullopt, st.line);
        Tower::Value b = eval(r, a.level, st.line);
        bool ok = tw.equal(a, b);
        return {ok, ok ? "holds over " + tw.vars(tw.common_ancestor({a.level, b.level}).value())->name()
                       : "difference is nonzero"};
    }
    if (kind == "image") {
        auto [l, r] = split_at(rest, "==");
        auto e = st.options.find("elem");
        if (e == st.options.end()) throw SuiteError("image check needs elem=", st.line);
        Tower::Value a = tw.act(element(e->second, st.line), eval(l, std::nullopt, st.line));
        Tower::Value b = eval(r, std::nullopt, st.line);
        bool ok = tw.equal(a, b);
        return {ok, ok ? "image verified" : "image differs: " + shorten(a.f.to_string())};
    }
    if (kind == "distinct") {
        auto items = split_top(rest, ',');
        std::vector<Tower::Value> vals;
        for (const auto& e : items) vals.push_back(eval(e, std::nullopt, st.line));
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                if (tw.equal(vals[i], vals[j])) return {false, items[i] + " == " + items[j]};
        return {true, std::to_string(vals.size()) + " pairwise distinct"};
    }
    if (kind == "degree" || kind == "word" || kind == "monomial" || kind == "pure" || kind == "matrix-group")
        return check_monomial_kind(st, kind, rest);
    if (kind == "kernel" || kind == "faithful" || kind == "stable") return check_kernel_kind(st, kind, rest);
    if (kind == "induced" || kind == "induced-order" || kind == "induced-transitive")
        return check_induced_kind(st, kind, rest);
    return check_group_kind(st, kind, rest);
}

std::string Runner::make_id(const Statement& st, const std::string& kind, const std::string& rest) {
    if (auto it = st.options.find("id"); it != st.options.end()) {
        if (ids_.count(it->second)) throw SuiteError("duplicate check id '" + it->second + "'", st.line);
        return it->second;
    }
    std::string base;
    auto w = words(rest);
    auto elem = st.options.find("elem");
    if ((kind == "table" || kind == "word" || kind == "induced") && !w.empty() && elem != st.options.end())
        base = kind + ":" + w[0] + ":" + elem->second;
    else if ((kind == "order" || kind == "transitive" || kind == "degree") && !w.empty())
        base = kind + ":" + w[0];
    else if ((kind == "normal" || kind == "subgroup") && w.size() >= 3)
        base = kind + ":" + w[0] + ":" + w[2];
    else if (kind == "invariance" && w.size() == 3 && w[1] == "under")
        base = kind + ":" + w[0] + ":" + w[2];
    else if (kind == "equal" && w.size() >= 2)
        base = kind + ":" + w[0] + ":" + w[1];
    else if ((kind == "faithful" || kind == "kernel" || kind == "stable" || kind == "monomial" || kind == "pure" ||
              kind == "matrix-group" || kind == "induced-order" || kind == "induced-transitive") &&
             w.size() >= 3 && w[1] == "under")
        base = kind + ":" + w[0] + ":" + w[2];
    else
        base = kind + "-" + std::to_string(++kind_counts_[kind]);
    std::string id = base;
    for (int k = 2; ids_.count(id); ++k) id = base + "#" + std::to_string(k);
    return id;
}

void Runner::record(CheckResult r) {
    if (ids_.count(r.id)) throw SuiteError("duplicate check id '" + r.id + "'");
    ids_.insert(r.id);
    if (!r.expected && opts_.fail_fast) stop_ = true;
    report_.checks.push_back(std::move(r));
}

void Runner::run_check(const Statement& st) {
    finalize_pending();
    std::string kind = check_kind(st), rest = check_rest(st);
    auto ref = st.options.find("ref");
    if (ref == st.options.end() || ref->second.empty()) throw SuiteError("check without ref", st.line);
    CheckResult r;
    r.id = make_id(st, kind, rest);
    r.paper_ref = ref->second;
    bool expect_fail = false;
    if (auto e = st.options.find("expect"); e != st.options.end()) {
        if (e->second != "fail") throw SuiteError("only expect=fail is supported", st.line);
        expect_fail = true;
    }
    std::string note;
    if (auto n = st.options.find("note"); n != st.options.end()) note = n->second;
    std::string oracle;
    if (auto o = st.options.find("oracle"); o != st.options.end()) oracle = o->second;

    auto guarded = [&](auto&& fn) -> Outcome {
        try {
            return fn();
        } catch (const SuiteError&) {
            throw;
        } catch (const std::exception& e) {
            return {false, std::string("error: ") + e.what()};
        }
    };

    if (kind == "table") {
        auto [y_name, images] = split_at(rest, "images =");
        auto e = st.options.find("elem");
        if (e == st.options.end() || images.empty()) throw SuiteError("table check needs elem= and images =", st.line);
        int y = table(y_name, st.line);
        GroupElement g = element(e->second, st.line);
        auto [printed, corrected] = split_word(images, "corrected =");
        if (!corrected.empty()) {
            if (!expect_fail) throw SuiteError("a corrected row needs expect=fail", st.line);
            if (oracle.empty()) throw SuiteError("a corrected row needs oracle=", st.line);
            Outcome p = guarded([&] { return check_table(st, y, g, printed); });
            Outcome c = guarded([&] { return check_table(st, y, g, corrected); });
            if (!p.ok && c.ok) {
                r.status = CheckStatus::FlaggedDiscrepancy;
                r.expected = true;
                r.detail = "printed row fails (" + p.detail + "); corrected row " + corrected + " verifies";
            } else {
                r.status = CheckStatus::Fail;
                r.expected = false;
                r.detail = p.ok ? "printed row verifies although flagged" : "corrected row also fails: " + c.detail;
            }
            if (!note.empty()) r.detail += "; " + note;
            record(std::move(r));
            return;
        }
        Outcome o = guarded([&] { return check_table(st, y, g, printed); });
        r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
        r.expected = o.ok != expect_fail;
        r.detail = o.detail + (note.empty() ? "" : "; " + note);
        record(std::move(r));
        return;
    }
    Outcome o = guarded([&] { return evaluate_check(st, kind, rest); });
    r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.expected = o.ok != expect_fail;
    r.detail = o.detail + (note.empty() ? "" : "; " + note);
    record(std::move(r));
}

SuiteReport Runner::run() {
    report_.suite = doc_.name;
    if (doc_.name != "catalog") {
        // every other suite sees the named elements and groups of the catalog
        perms_ = catalog_elements();
        for (const auto& e : catalog()) {
            PermGroup g = catalog_group(e);
            std::vector<GroupElement> gens;
            for (const auto& p : g.generators()) gens.push_back({p, false});
            groups_.emplace(e.name, GroupInfo{std::move(g), std::move(gens)});
        }
    }
    for (std::size_t i = 0; i < doc_.statements.size() && !stop_; ++i) {
        const Statement& st = doc_.statements[i];
        try {
            if (st.keyword == "suite")
                start_section(st, true);
            else if (st.keyword == "section")
                start_section(st, false);
            else if (st.keyword == "vars")
                declare_vars(st);
            else if (st.keyword == "subset")
                declare_subset(st);
            else if (st.keyword == "def")
                declare_def(st);
            else if (st.keyword == "perm")
                declare_perm(st);
            else if (st.keyword == "element")
                declare_element(st);
            else if (st.keyword == "group")
                declare_group(st);
            else if (st.keyword == "wreath")
                declare_wreath(st);
            else if (st.keyword == "matrix")
                declare_matrix(st);
            else if (st.keyword == "mod3-vectors")
                declare_mod3(st);
            else if (st.keyword == "check")
                run_check(st);
            else
                throw SuiteError("unknown statement '" + st.keyword + "'", st.line);
        } catch (const SuiteError& e) {
            if (e.line() || !st.line) throw;
            throw SuiteError(e.what(), st.line);
        } catch (const std::invalid_argument& e) {
            throw SuiteError(e.what(), st.line);
        } catch (const FieldError& e) {
            throw SuiteError(e.what(), st.line);
        }
    }
    return std::move(report_);
}

}  // namespace

SuiteReport run_suite_text(std::string_view text, const RunOptions& opts) {
    SuiteDocument doc = parse_suite(text);
    return Runner(doc, opts).run();
}

std::vector<std::string> list_suites() { return embedded_suite_names(); }

std::string_view suite_source(std::string_view name) {
    auto s = embedded_suite(name);
    if (s.empty()) throw SuiteError("unknown suite '" + std::string(name) + "'");
    return s;
}

SuiteReport run_suite(std::string_view name, const RunOptions& opts) {
    SuiteReport r = run_suite_text(suite_source(name), opts);
    if (r.suite != name) throw SuiteError("suite file '" + std::string(name) + "' declares suite '" + r.suite + "'");
    return r;
}

std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, const RunOptions& opts) {
    for (const auto& n : names) suite_source(n);
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, [n, opts] { return run_suite(n, opts); }));
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace s8inv
