#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace mixtype {

// Arithmetic expressions over the variables {x, y} with +, -, *, /, ^ (right
// associative), unary minus and the functions sin, cos, exp, sqrt, abs.
// Immutable after parse; evaluation is pure and thread safe.
class Expr {
public:
    struct Node;

    static Expr parse(std::string_view text); // throws ParseError
    static Expr constant(double v);

    double eval(double x, double y) const; // throws DomainError
    std::string str() const;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace mixtype
