#include "mixtype/source.hpp"
#include "mixtype/errors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace mixtype;

TEST_CASE("source: f1 is f at the mapped point over four") {
    CHECK(SourceTerm::zero().f1({0.3, 0.5}) == 0.0);
    const SourceTerm one = SourceTerm::from_expr(Expr::parse("1"));
    CHECK(one.f1({0.9, 0.1}) == doctest::Approx(0.25).epsilon(1e-15));
    const SourceTerm fx = SourceTerm::from_expr(Expr::parse("x"));
    CHECK(fx.f1({0.6, 0.2}) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("source: f1(to_char(p)) == f(p)/4 at random points") {
    const SourceTerm f = SourceTerm::from_expr(Expr::parse("x*y + sin(x) - exp(y/4)"));
    oracle::Lcg rng(777);
    for (int i = 0; i < 100; ++i) {
        const Point p{rng.next(), rng.next()};
        const double lhs = f.f1(to_char(p));
        const double rhs = 0.25 * f(p);
        CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("source: f1 rejects points outside the mixed-domain closure") {
    const SourceTerm one = SourceTerm::from_expr(Expr::parse("1"));
    CHECK_THROWS_AS(one.f1(to_char({0.5, -0.6})), DomainError);
    CHECK_THROWS_AS(one.f1(to_char({1.9, 0.9})), DomainError);
    // Hyperbolic lobes are inside the closure.
    CHECK(one.f1(to_char({0.5, -0.4})) == doctest::Approx(0.25));
    CHECK(one.f1(to_char({-0.3, 0.5})) == doctest::Approx(0.25));
    CHECK(one.f1(to_char({1.3, 0.5})) == doctest::Approx(0.25));
}

TEST_CASE("source: bilinear table reproduces linear data and guards its range") {
    std::vector<double> xs{-0.5, 0.0, 0.5, 1.0, 1.5};
    std::vector<double> ys{-0.5, 0.0, 0.5, 1.0};
    std::vector<double> v(xs.size() * ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i)
            v[j * xs.size() + i] = 2.0 * xs[i] + 3.0 * ys[j];
    const SourceTerm tab = SourceTerm::from_table(xs, ys, v);
    oracle::Lcg rng(42);
    for (int k = 0; k < 50; ++k) {
        const double x = rng.range(-0.5, 1.5), y = rng.range(-0.5, 1.0);
        CHECK(tab(x, y) == doctest::Approx(2.0 * x + 3.0 * y).epsilon(1e-13));
    }
    CHECK_THROWS_AS(tab(2.0, 0.5), DomainError);
    CHECK_FALSE(tab.smooth_claim());
}
