#pragma once

// A small arithmetic expression language for meridian curves:
// constants, the variable `s`, named parameters, unary functions
// (sin, cos, exp, ln, sqrt, neg) and binary operators (+ - * / ^).
// Precedence: ^  >  unary -  >  * /  >  + -, with ^ right-associative
// and the others left-associative. No implicit multiplication.

#include <map>
#include <memory>
#include <string>

#include "rot4/jet.hpp"

namespace rot4 {

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

enum class ExprKind { Number, Var, Param, Unary, Binary, Call };

struct ExprNode {
    ExprKind kind;
    double number = 0.0;   // Number
    std::string name;      // Param or Call
    char op = 0;           // Unary ('-') or Binary ('+','-','*','/','^')
    ExprPtr lhs, rhs;      // Unary/Call use lhs only

    static ExprPtr make_number(double v);
    static ExprPtr make_var();
    static ExprPtr make_param(std::string name);
    static ExprPtr make_unary(char op, ExprPtr child);
    static ExprPtr make_binary(char op, ExprPtr a, ExprPtr b);
    static ExprPtr make_call(std::string fn, ExprPtr arg);
};

using Bindings = std::map<std::string, double>;

/// Parses `text` into an AST. Throws ParseError (with byte offset) on
/// unbalanced parentheses, unknown function names, empty input, or
/// trailing garbage.
ExprPtr parse_expr(const std::string& text);

/// Evaluates the expression and its first three s-derivatives at `s`.
/// Throws EvalError on unbound parameters, domain violations
/// (ln of non-positive, sqrt of non-positive, division by zero) and
/// non-finite results.
Jet3 eval_jet(const ExprNode& ast, double s, const Bindings& params = {});

/// Renders the AST back to parseable text (fully parenthesized).
std::string to_string(const ExprNode& ast);

/// Deep copy.
ExprPtr clone(const ExprNode& ast);

} // namespace rot4
