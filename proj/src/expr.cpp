#include "mixtype/expr.hpp"

#include "mixtype/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace mixtype {

namespace {

enum class Op { Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt, Abs, Num, VarX, VarY };

} // namespace

struct Expr::Node {
    Op op;
    double num = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_num(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Num;
    n->num = v;
    return n;
}

struct Token {
    enum Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    double num = 0.0;
    std::string ident;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    Token tok_;

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        const char c = text_[pos_];
        switch (c) {
        case '+': tok_.kind = Token::Plus; ++pos_; return;
        case '-': tok_.kind = Token::Minus; ++pos_; return;
        case '*': tok_.kind = Token::Star; ++pos_; return;
        case '/': tok_.kind = Token::Slash; ++pos_; return;
        case '^': tok_.kind = Token::Caret; ++pos_; return;
        case '(': tok_.kind = Token::LParen; ++pos_; return;
        case ')': tok_.kind = Token::RParen; ++pos_; return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            tok_.num = std::strtod(begin, &end);
            if (end == begin) throw ParseError("invalid number", pos_);
            pos_ += static_cast<std::size_t>(end - begin);
            tok_.kind = Token::Num;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            tok_.kind = Token::Ident;
            tok_.ident = std::string(text_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End) throw ParseError("unexpected trailing token", t.offset);
        return e;
    }

private:
    Lexer lex_;

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Plus) {
                lex_.take();
                lhs = make(Op::Add, lhs, term());
            } else if (t.kind == Token::Minus) {
                lex_.take();
                lhs = make(Op::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Star) {
                lex_.take();
                lhs = make(Op::Mul, lhs, unary());
            } else if (t.kind == Token::Slash) {
                lex_.take();
                lhs = make(Op::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return make(Op::Neg, unary());
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            // Right associative; exponent may carry its own unary minus.
            return make(Op::Pow, base, unary());
        }
        return base;
    }

    NodePtr atom() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Num:
            return make_num(t.num);
        case Token::LParen: {
            NodePtr e = expr();
            Token close = lex_.take();
            if (close.kind != Token::RParen) throw ParseError("expected ')'", close.offset);
            return e;
        }
        case Token::Ident: {
            if (t.ident == "x") return make(Op::VarX);
            if (t.ident == "y") return make(Op::VarY);
            Op fn;
            if (t.ident == "sin") fn = Op::Sin;
            else if (t.ident == "cos") fn = Op::Cos;
            else if (t.ident == "exp") fn = Op::Exp;
            else if (t.ident == "sqrt") fn = Op::Sqrt;
            else if (t.ident == "abs") fn = Op::Abs;
            else throw ParseError("unknown identifier '" + t.ident + "'", t.offset);
            Token open = lex_.take();
            if (open.kind != Token::LParen)
                throw ParseError("expected '(' after function name", open.offset);
            NodePtr arg = expr();
            Token close = lex_.take();
            if (close.kind != Token::RParen) throw ParseError("expected ')'", close.offset);
            return make(fn, arg);
        }
        default:
            throw ParseError("unexpected token", t.offset);
        }
    }
};

double eval_node(const Expr::Node& n, double x, double y) {
    switch (n.op) {
    case Op::Num: return n.num;
    case Op::VarX: return x;
    case Op::VarY: return y;
    case Op::Neg: return -eval_node(*n.a, x, y);
    case Op::Add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case Op::Sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case Op::Mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case Op::Div: {
        const double d = eval_node(*n.b, x, y);
        if (d == 0.0) throw DomainError("division by zero");
        return eval_node(*n.a, x, y) / d;
    }
    case Op::Pow: {
        const double r = std::pow(eval_node(*n.a, x, y), eval_node(*n.b, x, y));
        if (!std::isfinite(r)) throw DomainError("pow outside numeric domain");
        return r;
    }
    case Op::Sin: return std::sin(eval_node(*n.a, x, y));
    case Op::Cos: return std::cos(eval_node(*n.a, x, y));
    case Op::Exp: {
        const double r = std::exp(eval_node(*n.a, x, y));
        if (!std::isfinite(r)) throw DomainError("exp overflow");
        return r;
    }
    case Op::Sqrt: {
        const double a = eval_node(*n.a, x, y);
        if (a < 0.0) throw DomainError("sqrt of negative value");
        return std::sqrt(a);
    }
    case Op::Abs: return std::abs(eval_node(*n.a, x, y));
    }
    throw DomainError("corrupt expression node");
}

// Precedence used for minimal stable parenthesization.
int prec(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
    }
}

void print_node(const Expr::Node& n, std::string& out);

void print_child(const Expr::Node& child, int parent_prec, bool needs_paren_on_equal,
                 std::string& out) {
    const int cp = prec(child.op);
    const bool paren = cp < parent_prec || (cp == parent_prec && needs_paren_on_equal);
    if (paren) out += '(';
    print_node(child, out);
    if (paren) out += ')';
}

void print_node(const Expr::Node& n, std::string& out) {
    char buf[40];
    switch (n.op) {
    case Op::Num:
        std::snprintf(buf, sizeof buf, "%.17g", n.num);
        out += buf;
        return;
    case Op::VarX: out += 'x'; return;
    case Op::VarY: out += 'y'; return;
    case Op::Neg:
        out += '-';
        print_child(*n.a, prec(Op::Neg), false, out);
        return;
    case Op::Add:
        print_child(*n.a, 1, false, out);
        out += '+';
        print_child(*n.b, 1, true, out);
        return;
    case Op::Sub:
        print_child(*n.a, 1, false, out);
        out += '-';
        print_child(*n.b, 1, true, out);
        return;
    case Op::Mul:
        print_child(*n.a, 2, false, out);
        out += '*';
        print_child(*n.b, 2, true, out);
        return;
    case Op::Div:
        print_child(*n.a, 2, false, out);
        out += '/';
        print_child(*n.b, 2, true, out);
        return;
    case Op::Pow:
        print_child(*n.a, 4, true, out); // left operand of ^ re-parenthesized
        out += '^';
        print_child(*n.b, 3, false, out);
        return;
    case Op::Sin: out += "sin("; break;
    case Op::Cos: out += "cos("; break;
    case Op::Exp: out += "exp("; break;
    case Op::Sqrt: out += "sqrt("; break;
    case Op::Abs: out += "abs("; break;
    default: return;
    }
    print_node(*n.a, out);
    out += ')';
}

} // namespace

Expr Expr::parse(std::string_view text) {
    Parser p(text);
    return Expr(p.run());
}

Expr Expr::constant(double v) { return Expr(make_num(v)); }

double Expr::eval(double x, double y) const { return eval_node(*root_, x, y); }

std::string Expr::str() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

} // namespace mixtype
