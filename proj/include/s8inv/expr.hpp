#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "s8inv/polynomial.hpp"

namespace s8inv {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' ['-'] integer)?
//   base   := variable | integer | 'zeta3' | '(' expr ')' | '-' factor
// A variable may be qualified as table.var.
struct ExprNode {
    enum class Kind { Integer, Variable, Zeta, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    mpz_class value;
    std::string name;
    long exponent = 0;
    std::shared_ptr<const ExprNode> lhs, rhs;
    std::size_t pos = 0;
};
using ExprPtr = std::shared_ptr<const ExprNode>;

ExprPtr parse_expr_ast(std::string_view text);
void collect_variables(const ExprNode& node, std::vector<std::string>& out);

// Fully parenthesized text that parses back to the same tree.
std::string format_expr(const ExprNode& node);
bool same_tree(const ExprNode& a, const ExprNode& b);

// Maps a variable name to its index in the target table.
using VarResolver = std::function<std::optional<std::size_t>(const std::string&)>;

RatFunc evaluate(const ExprNode& node, const VarTablePtr& vars, FieldTag field, const VarResolver& resolve);

// Variables are supplied directly as rational functions over vars.
using LeafEvaluator = std::function<RatFunc(const ExprNode& leaf)>;
RatFunc evaluate_leaves(const ExprNode& node, const VarTablePtr& vars, FieldTag field, const LeafEvaluator& leaf);
RatFunc evaluate(const ExprNode& node, const VarTablePtr& vars, FieldTag field);

RatFunc parse_expr(std::string_view text, const VarTablePtr& vars, FieldTag field);

}  // namespace s8inv
