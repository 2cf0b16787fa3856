#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "s8inv/expr.hpp"
#include "s8inv/perm.hpp"
#include "s8inv/suite.hpp"

namespace {

int verify(const std::vector<std::string>& requested, const std::vector<std::string>& files, bool all, bool list,
           const std::string& format, bool fail_fast) {
    using namespace s8inv;
    if (list) {
        for (const auto& n : list_suites()) std::cout << n << "\n";
        return 0;
    }
    std::vector<std::string> names = all ? list_suites() : requested;
    if (names.empty() && files.empty()) {
        std::cerr << "verify: give --suite <name>, --file <path>, --all or --list\n";
        return 2;
    }
    for (const auto& n : names) {
        try {
            suite_source(n);
        } catch (const SuiteError& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }
    std::vector<SuiteReport> reports;
    try {
        if (fail_fast) {
            for (const auto& n : names) {
                reports.push_back(run_suite(n, {true}));
                if (reports.back().unexpected()) break;
            }
        } else {
            reports = run_suites(names);
        }
        for (const auto& path : files) {
            std::ifstream in(path);
            if (!in) {
                std::cerr << "cannot read " << path << "\n";
                return 2;
            }
            std::stringstream text;
            text << in.rdbuf();
            reports.push_back(run_suite_text(text.str(), {fail_fast}));
        }
    } catch (const SuiteError& e) {
        std::cerr << "suite error: " << e.what() << "\n";
        return 2;
    }
    bool bad = false;
    for (const auto& r : reports) bad = bad || r.unexpected() > 0;
    if (format == "json") {
        nlohmann::json out;
        if (reports.size() == 1 && !all) {
            out = reports[0].to_json();
        } else {
            out = nlohmann::json::array();
            for (const auto& r : reports) out.push_back(r.to_json());
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) std::cout << r.to_text();
    }
    return bad ? 1 : 0;
}

int groups(const std::string& action, const std::string& name) {
    using namespace s8inv;
    if (action == "list") {
        for (const auto& e : catalog()) std::cout << e.name << " " << e.expected_order << "\n";
        return 0;
    }
    if (action == "order" || action == "show") {
        auto e = catalog_lookup(name);
        if (!e) {
            std::cerr << "unknown group '" << name << "'\n";
            return 2;
        }
        PermGroup g = catalog_group(*e);
        if (action == "order") {
            std::cout << g.order() << "\n";
        } else {
            std::cout << e->name << " order " << g.order() << (is_transitive(g) ? " transitive" : " intransitive") << "\n";
            for (const auto& p : g.generators()) std::cout << "  " << p.to_cycle_string() << "\n";
        }
        return 0;
    }
    std::cerr << "groups: expected list, order <name> or show <name>\n";
    return 2;
}

int eval(const std::string& text, const std::string& vars_text, const std::string& field_text, const std::string& other) {
    using namespace s8inv;
    auto field = parse_field_tag(field_text);
    if (!field) {
        std::cerr << "unknown field '" << field_text << "'\n";
        return 2;
    }
    std::vector<std::string> vars;
    std::istringstream is(vars_text);
    for (std::string v; std::getline(is, v, ',');)
        if (!v.empty()) vars.push_back(v);
    auto table = make_table("vars", vars);
    try {
        RatFunc f = parse_expr(text, table, *field);
        if (other.empty()) {
            std::cout << f.to_string() << "\n";
            return 0;
        }
        RatFunc g = parse_expr(other, table, *field);
        bool eq = f.equals(g);
        std::cout << (eq ? "equal" : "different") << "\n";
        return eq ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const FieldError& e) {
        std::cerr << e.what() << "\n";
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verify invariant-field computations for transitive subgroups of S8"};
    app.require_subcommand(1, 1);

    std::vector<std::string> suites, files;
    bool all = false, list = false, fail_fast = false;
    std::string format = "text";
    auto* v = app.add_subcommand("verify", "Run verification suites");
    v->add_option("--suite", suites, "Suite to run (repeatable)");
    v->add_option("--file", files, "Suite file to run (repeatable)")->check(CLI::ExistingFile);
    v->add_flag("--all", all, "Run every suite");
    v->add_flag("--list", list, "List the available suites");
    v->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    v->add_flag("--fail-fast", fail_fast, "Stop at the first unexpected result");

    std::string action, group_name;
    auto* g = app.add_subcommand("groups", "Query the catalog of transitive groups");
    g->add_option("action", action, "list, order or show")->required();
    g->add_option("name", group_name, "Group name such as G48");

    std::string expr, vars = "x1,x2,x3,x4,x5,x6,x7,x8", field = "Q", other;
    auto* e = app.add_subcommand("eval", "Normalise an expression");
    e->add_option("expr", expr)->required();
    e->add_option("--vars", vars, "Comma separated variable names");
    e->add_option("--field", field, "Q, F2, Qz3 or F4");
    e->add_option("--equals", other, "Compare with a second expression");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    if (*v) return verify(suites, files, all, list, format, fail_fast);
    if (*g) return groups(action, group_name);
    return eval(expr, vars, field, other);
}
