#include "mixtype/hyperbolic.hpp"

#include "mixtype/errors.hpp"
#include "mixtype/quadrature.hpp"

#include <cmath>

namespace mixtype {

RegionFrame::RegionFrame(int r) : region(r) {
    if (r < 1 || r > 3) throw OutOfRegion("hyperbolic region index must be 1, 2 or 3");
}

std::pair<double, double> RegionFrame::pq_from_char(CharPoint cp) const {
    switch (region) {
    case 1: return {cp.xi, cp.eta};
    case 2: return {cp.xi, -cp.eta};
    default: return {cp.xi - 1.0, 1.0 - cp.eta};
    }
}

CharPoint RegionFrame::char_from_pq(double p, double q) const {
    switch (region) {
    case 1: return {p, q};
    case 2: return {p, -q};
    default: return {1.0 + p, 1.0 - q};
    }
}

Point RegionFrame::point_from_pq(double p, double q) const {
    return from_char(char_from_pq(p, q));
}

double RegionFrame::f1(const SourceTerm& s, double p, double q) const {
    return s.f1(char_from_pq(p, q));
}

bool RegionFrame::contains(double p, double q, double tol) const {
    if (p < -tol || p > 1.0 + tol || q < -tol || q > 1.0 + tol) return false;
    return region == 3 ? q <= p + tol : p <= q + tol;
}

double RegionFrame::sign_nu() const { return region == 2 ? 1.0 : -1.0; }

double RegionFrame::sign_f() const { return region == 1 ? -1.0 : 1.0; }

double RegionFrame::eta_sign() const { return region == 1 ? 1.0 : -1.0; }

namespace {

double nu_integral(const TraceFn& nu, double a, double b) {
    // The interpolant is piecewise cubic; composite Gauss over the grid cells is exact.
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const int m = nu.grid_m();
    const double h = 1.0 / m;
    auto f = [&nu](double t) { return nu.value(t); };
    const int ja = std::min(static_cast<int>(std::ceil(a / h)), m);
    const int jb = std::max(static_cast<int>(std::floor(b / h)), 0);
    double acc = 0.0;
    if (ja > jb) {
        acc = quad::gl_panel(f, a, b, 4);
    } else {
        if (a < ja * h) acc += quad::gl_panel(f, a, ja * h, 4);
        for (int j = ja; j < jb; ++j) acc += quad::gl_panel(f, j * h, (j + 1) * h, 4);
        if (jb * h < b) acc += quad::gl_panel(f, jb * h, b, 4);
    }
    return sign * acc;
}

double triangle_integral(const RegionFrame& fr, const SourceTerm& s, double p, double q,
                         double tol) {
    // int_p^q dp1 int_{p1}^q f1 dq1, orientation-signed in both layers.
    auto outer = [&](double p1) {
        auto inner = [&](double q1) { return fr.f1(s, p1, q1); };
        return quad::adaptive(inner, p1, q, tol);
    };
    return quad::adaptive(outer, p, q, tol);
}

void check_region(const RegionFrame& fr, double p, double q) {
    if (!fr.contains(p, q))
        throw OutOfRegion("characteristic point outside hyperbolic region " +
                          std::to_string(fr.region));
}

} // namespace

double dalembert_u(int region, const TraceFn& tau, const TraceFn& nu, const SourceTerm& s,
                   CharPoint cp, double quad_tol) {
    const RegionFrame fr(region);
    auto [p, q] = fr.pq_from_char(cp);
    check_region(fr, p, q);
    double u = 0.5 * (tau.value(p) + tau.value(q) + fr.sign_nu() * nu_integral(nu, p, q));
    u += fr.sign_f() * triangle_integral(fr, s, p, q, quad_tol);
    return u;
}

std::pair<double, double> dalembert_grad(int region, const TraceFn& tau, const TraceFn& nu,
                                         const SourceTerm& s, CharPoint cp, double quad_tol) {
    const RegionFrame fr(region);
    auto [p, q] = fr.pq_from_char(cp);
    check_region(fr, p, q);
    const double sn = fr.sign_nu(), sf = fr.sign_f();
    auto along_p = [&](double q1) { return fr.f1(s, p, q1); };
    auto along_q = [&](double p1) { return fr.f1(s, p1, q); };
    const double vp = 0.5 * tau.deriv(p) - 0.5 * sn * nu.value(p) -
                      sf * quad::adaptive(along_p, p, q, quad_tol);
    const double vq = 0.5 * tau.deriv(q) + 0.5 * sn * nu.value(q) +
                      sf * quad::adaptive(along_q, p, q, quad_tol);
    return {vp, fr.eta_sign() * vq};
}

double compute_A(int i, double t, double sigma_i, const SourceTerm& s, const CharMaps& maps,
                 double quad_tol) {
    const RegionFrame fr(i);
    const double up = maps.upsilon(t);
    const double rho = maps.rho(t);
    auto const_p = [&](double q1) { return fr.f1(s, t, q1); };
    auto const_q = [&](double p1) { return fr.f1(s, p1, t); };
    const double iq = quad::adaptive(const_p, t, up, quad_tol);
    const double ip = quad::adaptive(const_q, rho, t, quad_tol);
    double a, b;
    switch (i) {
    case 1: a = sigma_i; b = 1.0; break;
    case 2: a = sigma_i; b = -1.0; break;
    default: a = 1.0; b = -sigma_i; break;
    }
    return 2.0 * a * iq + 2.0 * b * ip;
}

} // namespace mixtype
