#include "s8inv/expr.hpp"

#include <cctype>

namespace s8inv {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return e;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    static ExprPtr node(ExprNode::Kind k, std::size_t pos, ExprPtr l = nullptr, ExprPtr r = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->pos = pos;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    ExprPtr expr() {
        ExprPtr l = term();
        for (;;) {
            skip();
            std::size_t p = i_;
            if (eat('+'))
                l = node(ExprNode::Kind::Add, p, l, term());
            else if (eat('-'))
                l = node(ExprNode::Kind::Sub, p, l, term());
            else
                return l;
        }
    }

    ExprPtr term() {
        ExprPtr l = factor();
        for (;;) {
            skip();
            std::size_t p = i_;
            if (eat('*'))
                l = node(ExprNode::Kind::Mul, p, l, factor());
            else if (eat('/'))
                l = node(ExprNode::Kind::Div, p, l, factor());
            else
                return l;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        skip();
        std::size_t p = i_;
        if (eat('^')) {
            skip();
            bool neg = false;
            if (i_ < s_.size() && s_[i_] == '-') {
                neg = true;
                ++i_;
            }
            skip();
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (start == i_) throw ParseError("expected integer exponent", start);
            if (i_ - start > 6) throw ParseError("exponent too large", start);
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Pow;
            n->pos = p;
            n->lhs = b;
            n->exponent = std::stol(std::string(s_.substr(start, i_ - start))) * (neg ? -1 : 1);
            return n;
        }
        return b;
    }

    ExprPtr base() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
        std::size_t p = i_;
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            ExprPtr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return e;
        }
        if (c == '-') {
            ++i_;
            return node(ExprNode::Kind::Neg, p, factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Integer;
            n->pos = p;
            n->value = mpz_class(std::string(s_.substr(p, i_ - p)));
            return n;
        }
        if (ident_start(c)) {
            while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
            if (i_ + 1 < s_.size() && s_[i_] == '.' && ident_start(s_[i_ + 1])) {
                ++i_;
                while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
            }
            std::string name(s_.substr(p, i_ - p));
            auto n = std::make_shared<ExprNode>();
            n->pos = p;
            if (name == "zeta3") {
                n->kind = ExprNode::Kind::Zeta;
            } else {
                n->kind = ExprNode::Kind::Variable;
                n->name = std::move(name);
            }
            return n;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", p);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

ExprPtr parse_expr_ast(std::string_view text) { return Parser(text).parse(); }

void collect_variables(const ExprNode& node, std::vector<std::string>& out) {
    if (node.kind == ExprNode::Kind::Variable) {
        for (const auto& v : out)
            if (v == node.name) return;
        out.push_back(node.name);
        return;
    }
    if (node.lhs) collect_variables(*node.lhs, out);
    if (node.rhs) collect_variables(*node.rhs, out);
}

std::string format_expr(const ExprNode& node) {
    using K = ExprNode::Kind;
    auto bin = [&](const char* op) { return "(" + format_expr(*node.lhs) + " " + op + " " + format_expr(*node.rhs) + ")"; };
    switch (node.kind) {
    case K::Integer: return node.value.get_str();
    case K::Variable: return node.name;
    case K::Zeta: return "zeta3";
    case K::Neg: return "(-" + format_expr(*node.lhs) + ")";
    case K::Add: return bin("+");
    case K::Sub: return bin("-");
    case K::Mul: return bin("*");
    case K::Div: return bin("/");
    case K::Pow: return "(" + format_expr(*node.lhs) + "^" + std::to_string(node.exponent) + ")";
    }
    return "?";
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.exponent != b.exponent) return false;
    if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
    if (a.lhs && !same_tree(*a.lhs, *b.lhs)) return false;
    return !a.rhs || same_tree(*a.rhs, *b.rhs);
}

RatFunc evaluate_leaves(const ExprNode& node, const VarTablePtr& vars, FieldTag field, const LeafEvaluator& leaf) {
    using K = ExprNode::Kind;
    switch (node.kind) {
    case K::Integer: return RatFunc::constant(vars, Scalar::from_integer(field, node.value));
    case K::Zeta:
        try {
            return RatFunc::constant(vars, Scalar::zeta3(field));
        } catch (const FieldError& e) {
            throw ParseError(e.what(), node.pos);
        }
    case K::Variable: return leaf(node);
    case K::Neg: return -evaluate_leaves(*node.lhs, vars, field, leaf);
    case K::Add: return evaluate_leaves(*node.lhs, vars, field, leaf) + evaluate_leaves(*node.rhs, vars, field, leaf);
    case K::Sub: return evaluate_leaves(*node.lhs, vars, field, leaf) - evaluate_leaves(*node.rhs, vars, field, leaf);
    case K::Mul: return evaluate_leaves(*node.lhs, vars, field, leaf) * evaluate_leaves(*node.rhs, vars, field, leaf);
    case K::Div: {
        RatFunc d = evaluate_leaves(*node.rhs, vars, field, leaf);
        if (d.is_zero()) throw ParseError("division by zero", node.pos);
        return evaluate_leaves(*node.lhs, vars, field, leaf) / d;
    }
    case K::Pow: {
        RatFunc b = evaluate_leaves(*node.lhs, vars, field, leaf);
        if (node.exponent < 0 && b.is_zero()) throw ParseError("negative power of zero", node.pos);
        return b.pow(node.exponent);
    }
    }
    throw ParseError("bad expression node", node.pos);
}

RatFunc evaluate(const ExprNode& node, const VarTablePtr& vars, FieldTag field, const VarResolver& resolve) {
    return evaluate_leaves(node, vars, field, [&](const ExprNode& v) {
        auto idx = resolve(v.name);
        if (!idx) throw ParseError("unknown variable '" + v.name + "'", v.pos);
        return RatFunc::variable(vars, field, *idx);
    });
}

RatFunc evaluate(const ExprNode& node, const VarTablePtr& vars, FieldTag field) {
    return evaluate(node, vars, field, [&vars](const std::string& n) { return vars->index_of(n); });
}

RatFunc parse_expr(std::string_view text, const VarTablePtr& vars, FieldTag field) {
    return evaluate(*parse_expr_ast(text), vars, field);
}

}  // namespace s8inv
