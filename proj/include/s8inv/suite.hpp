#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace s8inv {

enum class CheckStatus { Pass, Fail, FlaggedDiscrepancy };
std::string_view status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string paper_ref;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;
    // false when the status differs from what the suite declares
    bool expected = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    std::size_t unexpected() const;
    std::size_t count(CheckStatus s) const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

// Malformed suite text or an unknown suite name.
class SuiteError : public std::runtime_error {
public:
    SuiteError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// One logical line of a suite file.
struct Statement {
    std::size_t line = 0;
    std::string keyword;  // first word: suite, section, vars, def, check, ...
    std::string body;     // the rest, with recognised options removed
    std::map<std::string, std::string> options;
};

struct SuiteDocument {
    std::string name;
    std::vector<Statement> statements;
};

SuiteDocument parse_suite(std::string_view text);

// Every algebraic expression written in the document, in file order.
std::vector<std::string> suite_expressions(const SuiteDocument& doc);

struct RunOptions {
    bool fail_fast = false;
};

SuiteReport run_suite_text(std::string_view text, const RunOptions& opts = {});

std::vector<std::string> list_suites();
std::string_view suite_source(std::string_view name);  // throws SuiteError
SuiteReport run_suite(std::string_view name, const RunOptions& opts = {});

// Runs several suites concurrently; reports come back in the given order.
std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, const RunOptions& opts = {});

}  // namespace s8inv
