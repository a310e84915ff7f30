#pragma once

#include "mixtype/expr.hpp"
#include "mixtype/geometry.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace mixtype {

// Right-hand side f(x,y), backed by a parsed expression, a tabulated grid with
// bilinear interpolation, or (for tests) an arbitrary closure. Also provides
// the characteristic-coordinate form f1(xi,eta) = f((xi+eta)/2, (xi-eta)/2)/4.
class SourceTerm {
public:
    SourceTerm() = default;

    static SourceTerm from_expr(Expr e, bool smooth_claim = true);
    // Regular grid; values laid out row-major over ys (v[j*nx + i] = f(xs[i], ys[j])).
    static SourceTerm from_table(std::vector<double> xs, std::vector<double> ys,
                                 std::vector<double> values, bool smooth_claim = false);
    static SourceTerm from_function(std::function<double(double, double)> f,
                                    bool smooth_claim = true);
    static SourceTerm zero();

    double operator()(double x, double y) const;
    double operator()(Point p) const { return (*this)(p.x, p.y); }

    // f1 of Eqs. in characteristic coordinates; DomainError if the mapped point
    // lies outside the closure of the mixed domain's maximal extent.
    double f1(CharPoint cp) const;

    bool smooth_claim() const { return smooth_claim_; }

private:
    std::function<double(double, double)> f_;
    bool smooth_claim_ = true;
};

double f1_eval(const SourceTerm& s, CharPoint cp);

} // namespace mixtype
