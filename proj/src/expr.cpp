#include "rot4/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace rot4 {

ExprPtr ExprNode::make_number(double v) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Number;
    n->number = v;
    return n;
}
ExprPtr ExprNode::make_var() {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Var;
    return n;
}
ExprPtr ExprNode::make_param(std::string name) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Param;
    n->name = std::move(name);
    return n;
}
ExprPtr ExprNode::make_unary(char op, ExprPtr child) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Unary;
    n->op = op;
    n->lhs = std::move(child);
    return n;
}
ExprPtr ExprNode::make_binary(char op, ExprPtr a, ExprPtr b) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}
ExprPtr ExprNode::make_call(std::string fn, ExprPtr arg) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ExprKind::Call;
    n->name = std::move(fn);
    n->lhs = std::move(arg);
    return n;
}

ExprPtr clone(const ExprNode& ast) {
    auto n = std::make_unique<ExprNode>();
    n->kind = ast.kind;
    n->number = ast.number;
    n->name = ast.name;
    n->op = ast.op;
    if (ast.lhs) n->lhs = clone(*ast.lhs);
    if (ast.rhs) n->rhs = clone(*ast.rhs);
    return n;
}

namespace {

bool is_known_function(const std::string& name) {
    return name == "sin" || name == "cos" || name == "exp" || name == "ln" ||
           name == "sqrt" || name == "neg";
}

struct Token {
    enum class Kind { Number, Ident, Op, LParen, RParen, End } kind;
    double number = 0.0;
    std::string text;
    char op = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= text_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            t.number = std::strtod(begin, &end);
            if (end == begin) throw ParseError("invalid number", pos_);
            pos_ += static_cast<std::size_t>(end - begin);
            t.kind = Token::Kind::Number;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            t.kind = Token::Kind::Ident;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        switch (c) {
        case '+': case '-': case '*': case '/': case '^':
            t.kind = Token::Kind::Op;
            t.op = c;
            ++pos_;
            return t;
        case '(':
            t.kind = Token::Kind::LParen;
            ++pos_;
            return t;
        case ')':
            t.kind = Token::Kind::RParen;
            ++pos_;
            return t;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { advance(); }

    ExprPtr parse() {
        if (cur_.kind == Token::Kind::End) throw ParseError("empty expression", 0);
        ExprPtr e = parse_sum();
        if (cur_.kind != Token::Kind::End)
            throw ParseError("unexpected trailing input", cur_.offset);
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    ExprPtr parse_sum() {
        ExprPtr e = parse_product();
        while (cur_.kind == Token::Kind::Op && (cur_.op == '+' || cur_.op == '-')) {
            char op = cur_.op;
            advance();
            e = ExprNode::make_binary(op, std::move(e), parse_product());
        }
        return e;
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_unary();
        while (cur_.kind == Token::Kind::Op && (cur_.op == '*' || cur_.op == '/')) {
            char op = cur_.op;
            advance();
            e = ExprNode::make_binary(op, std::move(e), parse_unary());
        }
        return e;
    }

    // Unary minus binds looser than '^': -s^2 is -(s^2).
    ExprPtr parse_unary() {
        if (cur_.kind == Token::Kind::Op && cur_.op == '-') {
            advance();
            return ExprNode::make_unary('-', parse_unary());
        }
        return parse_power();
    }

    // Right-associative; the exponent re-enters at unary so 2^-1 parses.
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (cur_.kind == Token::Kind::Op && cur_.op == '^') {
            advance();
            return ExprNode::make_binary('^', std::move(base), parse_unary());
        }
        return base;
    }

    ExprPtr parse_atom() {
        switch (cur_.kind) {
        case Token::Kind::Number: {
            double v = cur_.number;
            advance();
            return ExprNode::make_number(v);
        }
        case Token::Kind::Ident: {
            std::string name = cur_.text;
            std::size_t off = cur_.offset;
            advance();
            if (cur_.kind == Token::Kind::LParen) {
                if (!is_known_function(name))
                    throw ParseError("unknown function '" + name + "'", off);
                std::size_t open_off = cur_.offset;
                advance();
                if (cur_.kind == Token::Kind::End)
                    throw ParseError("unbalanced parenthesis", open_off + 1);
                ExprPtr arg = parse_sum();
                expect_rparen();
                return ExprNode::make_call(name, std::move(arg));
            }
            if (name == "s") return ExprNode::make_var();
            return ExprNode::make_param(name);
        }
        case Token::Kind::LParen: {
            std::size_t open_off = cur_.offset;
            advance();
            if (cur_.kind == Token::Kind::End)
                throw ParseError("unbalanced parenthesis", open_off + 1);
            ExprPtr e = parse_sum();
            expect_rparen();
            return e;
        }
        case Token::Kind::RParen:
            throw ParseError("unbalanced parenthesis", cur_.offset);
        case Token::Kind::Op:
            throw ParseError(std::string("unexpected operator '") + cur_.op + "'", cur_.offset);
        case Token::Kind::End:
            throw ParseError("unexpected end of input", cur_.offset);
        }
        throw ParseError("unreachable", cur_.offset);
    }

    void expect_rparen() {
        if (cur_.kind != Token::Kind::RParen)
            throw ParseError("unbalanced parenthesis", cur_.offset);
        advance();
    }

    Lexer lexer_;
    Token cur_;
};

bool is_integer_constant(const Jet3& j, long& out) {
    if (j.d1 != 0.0 || j.d2 != 0.0 || j.d3 != 0.0) return false;
    double r = std::round(j.f);
    if (std::abs(j.f - r) > 1e-12 || std::abs(r) > 64.0) return false;
    out = static_cast<long>(r);
    return true;
}

Jet3 eval_node(const ExprNode& n, double s, const Bindings& params) {
    switch (n.kind) {
    case ExprKind::Number:
        return Jet3::constant(n.number);
    case ExprKind::Var:
        return Jet3::variable(s);
    case ExprKind::Param: {
        auto it = params.find(n.name);
        if (it == params.end()) throw EvalError("unbound parameter '" + n.name + "'", s);
        return Jet3::constant(it->second);
    }
    case ExprKind::Unary:
        return -eval_node(*n.lhs, s, params);
    case ExprKind::Call: {
        Jet3 a = eval_node(*n.lhs, s, params);
        if (n.name == "sin") return sin(a);
        if (n.name == "cos") return cos(a);
        if (n.name == "exp") return exp(a);
        if (n.name == "neg") return -a;
        if (n.name == "ln") {
            if (!(a.f > 0.0)) throw EvalError("ln of non-positive value", s);
            return log(a);
        }
        if (n.name == "sqrt") {
            if (!(a.f > 0.0)) throw EvalError("sqrt of non-positive value", s);
            return sqrt(a);
        }
        throw EvalError("unknown function '" + n.name + "'", s);
    }
    case ExprKind::Binary: {
        Jet3 a = eval_node(*n.lhs, s, params);
        Jet3 b = eval_node(*n.rhs, s, params);
        switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
            if (b.f == 0.0) throw EvalError("division by zero", s);
            return a / b;
        case '^': {
            long k = 0;
            if (is_integer_constant(b, k)) {
                if (k < 0 && a.f == 0.0)
                    throw EvalError("zero raised to a negative power", s);
                return powi(a, k);
            }
            if (!(a.f > 0.0))
                throw EvalError("non-positive base with non-integer exponent", s);
            return exp(b * log(a));
        }
        default: break;
        }
        throw EvalError("unknown operator", s);
    }
    }
    throw EvalError("malformed AST", s);
}

} // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    return p.parse();
}

Jet3 eval_jet(const ExprNode& ast, double s, const Bindings& params) {
    Jet3 r = eval_node(ast, s, params);
    if (!r.finite()) throw EvalError("non-finite result", s);
    return r;
}

namespace {

void print_node(const ExprNode& n, std::ostream& os) {
    switch (n.kind) {
    case ExprKind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", n.number);
        os << buf;
        return;
    }
    case ExprKind::Var:
        os << 's';
        return;
    case ExprKind::Param:
        os << n.name;
        return;
    case ExprKind::Unary:
        os << "(-";
        print_node(*n.lhs, os);
        os << ')';
        return;
    case ExprKind::Call:
        os << n.name << '(';
        print_node(*n.lhs, os);
        os << ')';
        return;
    case ExprKind::Binary:
        os << '(';
        print_node(*n.lhs, os);
        os << n.op;
        print_node(*n.rhs, os);
        os << ')';
        return;
    }
}

} // namespace

std::string to_string(const ExprNode& ast) {
    std::ostringstream os;
    print_node(ast, os);
    return os.str();
}

} // namespace rot4
