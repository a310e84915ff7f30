#include "mixtype/hyperbolic.hpp"
#include "mixtype/errors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace mixtype;

namespace {

const SourceTerm kZero = SourceTerm::zero();
const SourceTerm kOne = SourceTerm::from_function([](double, double) { return 1.0; });

TraceFn quad_trace(int M = 128) {
    return TraceFn::sample([](double t) { return 2.0 * t * t; },
                           [](double t) { return 4.0 * t; }, M);
}

} // namespace

TEST_CASE("dalembert: quadratic wave data in region 1") {
    const TraceFn tau = quad_trace();
    const TraceFn nu = TraceFn::zero(128);
    // u = xi^2 + eta^2 = 2x^2 + 2y^2 solves the homogeneous problem with u_y(x,0)=0.
    const double u = dalembert_u(1, tau, nu, kZero, to_char({0.5, -0.2}));
    CHECK(u == doctest::Approx(0.58).epsilon(1e-12));
    oracle::Lcg rng(11);
    for (int i = 0; i < 30; ++i) {
        const double x = rng.range(0.1, 0.9);
        const double y = -rng.range(0.0, std::min(x, 1.0 - x));
        const double got = dalembert_u(1, tau, nu, kZero, to_char({x, y}));
        CHECK(std::abs(got - (2.0 * x * x + 2.0 * y * y)) <= 1e-10);
    }
}

TEST_CASE("dalembert: zero data gives zero") {
    const TraceFn z = TraceFn::zero(64);
    CHECK(dalembert_u(1, z, z, kZero, to_char({0.5, -0.2})) == 0.0);
    CHECK(dalembert_u(2, z, z, kZero, to_char({-0.2, 0.5})) == 0.0);
    CHECK(dalembert_u(3, z, z, kZero, to_char({1.2, 0.5})) == 0.0);
}

TEST_CASE("dalembert: constant source against the brute-force double quadrature") {
    const TraceFn z = TraceFn::zero(64);
    const CharPoint cp = to_char({0.5, -0.2});
    const double u = dalembert_u(1, z, z, kOne, cp);
    // Region-1 value is minus the triangle integral of f1 = 1/4.
    const double brute = -oracle::triangle_trapezoid(
        [](double, double) { return 0.25; }, cp.xi, cp.eta, 400);
    CHECK(std::abs(u - brute) <= 1e-6);
    CHECK(u == doctest::Approx(-0.5 * 0.2 * 0.2).epsilon(1e-9)); // u = -y^2/2
}

TEST_CASE("dalembert: gradient of the quadratic wave") {
    const TraceFn tau = quad_trace();
    const TraceFn nu = TraceFn::zero(128);
    const auto g = dalembert_grad(1, tau, nu, kZero, CharPoint{0.3, 0.7});
    CHECK(g.first == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(g.second == doctest::Approx(1.4).epsilon(1e-12));
    const TraceFn z = TraceFn::zero(64);
    const auto gz = dalembert_grad(1, z, z, kZero, CharPoint{0.3, 0.7});
    CHECK(gz.first == 0.0);
    CHECK(gz.second == 0.0);
}

TEST_CASE("dalembert: gradient matches finite differences of the value") {
    const TraceFn tau = TraceFn::sample([](double t) { return std::sin(2.0 * t); },
                                        [](double t) { return 2.0 * std::cos(2.0 * t); }, 256);
    const TraceFn nu = TraceFn::sample([](double t) { return 0.5 * std::cos(t); },
                                       [](double t) { return -0.5 * std::sin(t); }, 256);
    const SourceTerm f = SourceTerm::from_function([](double x, double y) { return x + 2.0 * y; });
    for (int region = 1; region <= 3; ++region) {
        const RegionFrame fr(region);
        const double p = 0.35, q = region == 3 ? 0.2 : 0.75;
        const CharPoint cp = fr.char_from_pq(p, q);
        const auto g = dalembert_grad(region, tau, nu, f, cp);
        for (double h : {1e-3, 1e-4}) {
            auto u = [&](double xi, double eta) {
                return dalembert_u(region, tau, nu, f, CharPoint{xi, eta});
            };
            const double fd_xi = (u(cp.xi + h, cp.eta) - u(cp.xi - h, cp.eta)) / (2.0 * h);
            const double fd_eta = (u(cp.xi, cp.eta + h) - u(cp.xi, cp.eta - h)) / (2.0 * h);
            CHECK(std::abs(fd_xi - g.first) <= 10.0 * h * h);
            CHECK(std::abs(fd_eta - g.second) <= 10.0 * h * h);
        }
    }
}

TEST_CASE("dalembert: wave-equation residual vanishes at second order") {
    const TraceFn tau = TraceFn::sample([](double t) { return std::sin(2.0 * t); },
                                        [](double t) { return 2.0 * std::cos(2.0 * t); }, 256);
    const TraceFn nu = TraceFn::sample([](double t) { return 0.5 * std::cos(t); },
                                       [](double t) { return -0.5 * std::sin(t); }, 256);
    const SourceTerm f =
        SourceTerm::from_function([](double x, double y) { return std::sin(x) + 2.0 * y; });
    for (int region = 1; region <= 3; ++region) {
        const RegionFrame fr(region);
        const double p = 0.4, q = region == 3 ? 0.25 : 0.7;
        auto v = [&](double pp, double qq) {
            return dalembert_u(region, tau, nu, f, fr.char_from_pq(pp, qq));
        };
        auto residual = [&](double h) {
            const double mixed =
                (v(p + h, q + h) - v(p + h, q - h) - v(p - h, q + h) + v(p - h, q - h)) /
                (4.0 * h * h);
            const Point xy = fr.point_from_pq(p, q);
            return std::abs(4.0 * fr.eta_sign() * mixed - f(xy));
        };
        const double r1 = residual(0.02);
        const double r2 = residual(0.01);
        CHECK(r1 < 2e-3);
        CHECK(r2 < r1 / 2.5); // O(h^2)
    }
}

TEST_CASE("dalembert: Cauchy data is recovered on the type-change line") {
    const TraceFn tau = TraceFn::sample([](double t) { return std::sin(2.0 * t); },
                                        [](double t) { return 2.0 * std::cos(2.0 * t); }, 256);
    const TraceFn nu = TraceFn::sample([](double t) { return 0.3 + 0.5 * t; },
                                       [](double) { return 0.5; }, 256);
    const SourceTerm f =
        SourceTerm::from_function([](double x, double y) { return x * x - y + 1.0; });

    for (int region = 1; region <= 3; ++region) {
        const RegionFrame fr(region);
        for (int i = 1; i < 10; ++i) {
            const double t = i / 10.0;
            CHECK(std::abs(dalembert_u(region, tau, nu, f, fr.char_from_pq(t, t)) -
                           tau.value(t)) <= 1e-9);
        }
    }

    // Normal derivative on AB from below: one-sided second-order difference in y.
    auto u1 = [&](double x, double y) {
        return dalembert_u(1, tau, nu, f, to_char({x, y}));
    };
    for (double x : {0.3, 0.5, 0.7}) {
        auto nd = [&](double h) {
            return (3.0 * u1(x, 0.0) - 4.0 * u1(x, -h) + u1(x, -2.0 * h)) / (2.0 * h);
        };
        CHECK(std::abs(nd(0.01) - nu.value(x)) <= 5e-3);
        CHECK(std::abs(nd(0.005) - nu.value(x)) <= std::abs(nd(0.02) - nu.value(x)));
    }
}

TEST_CASE("dalembert: out-of-region points are rejected") {
    const TraceFn z = TraceFn::zero(64);
    CHECK_THROWS_AS(dalembert_u(1, z, z, kZero, to_char({0.5, 0.2})), OutOfRegion);
    CHECK_THROWS_AS(dalembert_u(2, z, z, kZero, to_char({0.2, 0.5})), OutOfRegion);
    CHECK_THROWS_AS(dalembert_u(3, z, z, kZero, to_char({0.8, 0.5})), OutOfRegion);
    CHECK_THROWS_AS(dalembert_u(4, z, z, kZero, CharPoint{0, 0}), OutOfRegion);
}

TEST_CASE("compute_A: vanishes for zero sources") {
    const CharMaps maps1 = build_char_maps(TypeChangeCurve::bump(1, 0.25));
    const CharMaps maps2 = build_char_maps(TypeChangeCurve::bump(2, 0.25));
    const CharMaps maps3 = build_char_maps(TypeChangeCurve::bump(3, 0.25));
    for (double t : {0.2, 0.5, 0.8}) {
        CHECK(compute_A(1, t, 0.7, kZero, maps1) == 0.0);
        CHECK(compute_A(2, t, 0.7, kZero, maps2) == 0.0);
        CHECK(compute_A(3, t, 0.7, kZero, maps3) == 0.0);
    }
}

TEST_CASE("compute_A: constant source closed forms") {
    const CharMaps maps1 = build_char_maps(TypeChangeCurve::bump(1, 0.25));
    const CharMaps maps2 = build_char_maps(TypeChangeCurve::bump(2, 0.25));
    const CharMaps maps3 = build_char_maps(TypeChangeCurve::bump(3, 0.25));
    const double s1 = 0.4, s2 = -0.3, s3 = 0.6;
    for (int i = 1; i <= 9; ++i) {
        const double t = i / 10.0;
        const double a1 = compute_A(1, t, s1, kOne, maps1);
        CHECK(a1 == doctest::Approx(s1 * (maps1.upsilon(t) - t) / 2.0 +
                                    (t - maps1.rho(t)) / 2.0)
                        .epsilon(1e-10));
        const double a2 = compute_A(2, t, s2, kOne, maps2);
        CHECK(a2 == doctest::Approx(s2 * (maps2.upsilon(t) - t) / 2.0 -
                                    (t - maps2.rho(t)) / 2.0)
                        .epsilon(1e-10));
        const double a3 = compute_A(3, t, s3, kOne, maps3);
        CHECK(a3 == doctest::Approx((maps3.upsilon(t) - t) / 2.0 -
                                    s3 * (t - maps3.rho(t)) / 2.0)
                        .epsilon(1e-10));
    }
}

TEST_CASE("compute_A: sigma1=0 value against bisection-inverted maps") {
    const CharMaps maps1 = build_char_maps(TypeChangeCurve::bump(1, 0.25));
    auto gamma = [](double x) { return 0.25 * x * (1.0 - x); };
    const double xr = oracle::bisect([&](double x) { return x + gamma(x) - 0.5; }, 0.0, 1.0);
    const double rho_05 = xr - gamma(xr);
    const double a1 = compute_A(1, 0.5, 0.0, kOne, maps1);
    CHECK(a1 == doctest::Approx((0.5 - rho_05) / 2.0).epsilon(1e-10));
}

TEST_CASE("functional relations: grads at the affixes reproduce the A identity") {
    // For arbitrary smooth tau, nu, f the D'Alembert representation satisfies
    //   [u_x - u_y](theta_i) - s_i [u_x + u_y](theta_i*) = +/-(LHS_i - A_i),
    // with LHS_1 = (1-s1) tau' - (1+s1) nu (minus sign on the right for i=2)
    // and LHS_{2,3} = (1+s) tau' + (1-s) nu. This pins every sign in compute_A.
    const TraceFn tau = TraceFn::sample([](double t) { return std::sin(2.0 * t); },
                                        [](double t) { return 2.0 * std::cos(2.0 * t); }, 256);
    const TraceFn nu = TraceFn::sample([](double t) { return 0.2 + t * t; },
                                       [](double t) { return 2.0 * t; }, 256);
    const SourceTerm f =
        SourceTerm::from_function([](double x, double y) { return std::cos(3.0 * x) + y; });
    const double sig[4] = {0.0, 0.45, -0.35, 0.25};
    const TypeChangeCurve curves[3] = {TypeChangeCurve::bump(1, 0.25),
                                       TypeChangeCurve::bump(2, 0.3),
                                       TypeChangeCurve::bump(3, 0.2)};
    for (int line = 1; line <= 3; ++line) {
        const TypeChangeCurve& curve = curves[line - 1];
        const CharMaps maps = build_char_maps(curve);
        const double s = sig[line];
        for (int i = 1; i < 20; ++i) {
            const double t = i / 20.0;
            const auto g = dalembert_grad(line, tau, nu, f, to_char(affix(line, t, false, curve)));
            const auto gs = dalembert_grad(line, tau, nu, f, to_char(affix(line, t, true, curve)));
            const double A = compute_A(line, t, s, f, maps);
            double lhs, rhs;
            if (line == 1) {
                rhs = 2.0 * g.second - s * 2.0 * gs.first;
                lhs = (1.0 - s) * tau.deriv(t) - (1.0 + s) * nu.value(t) - A;
            } else if (line == 2) {
                rhs = 2.0 * g.second - s * 2.0 * gs.first;
                lhs = -((1.0 + s) * tau.deriv(t) + (1.0 - s) * nu.value(t) - A);
            } else {
                rhs = 2.0 * g.first - s * 2.0 * gs.second;
                lhs = (1.0 + s) * tau.deriv(t) + (1.0 - s) * nu.value(t) - A;
            }
            CHECK(std::abs(lhs - rhs) <= 1e-8);
        }
    }
}
