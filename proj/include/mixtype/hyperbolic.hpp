#pragma once

#include "mixtype/geometry.hpp"
#include "mixtype/source.hpp"
#include "mixtype/trace_fn.hpp"

#include <utility>

namespace mixtype {

// Local characteristic frame of hyperbolic lobe i. Both feet of the
// characteristics through an interior point land on the type-change line at
// the local coordinates (p,q), which equal the line's arc parameter:
//   region 1: p = xi,   q = eta    (feet on AB, parameter x)
//   region 2: p = xi,   q = -eta   (feet on AD, parameter y)
//   region 3: p = xi-1, q = 1-eta  (feet on BC, parameter y)
struct RegionFrame {
    int region;

    explicit RegionFrame(int r);

    std::pair<double, double> pq_from_char(CharPoint cp) const;
    CharPoint char_from_pq(double p, double q) const;
    Point point_from_pq(double p, double q) const;

    // f1 at the actual characteristic point with local coordinates (p,q).
    double f1(const SourceTerm& s, double p, double q) const;

    bool contains(double p, double q, double tol = 1e-9) const;

    // Trace normal directions are d/dy on AB, d/d(-x) on AD, d/dx on BC;
    // these signs make the single D'Alembert form below valid in all lobes.
    double sign_nu() const;  // sign of the nu integral term
    double sign_f() const;   // sign of the double integral term
    // u_eta = eta_sign() * dv/dq for the local solution v(p,q).
    double eta_sign() const;
};

// Value of the D'Alembert representation
//   u = [tau(p) + tau(q) + s_nu * int_p^q nu] / 2 + s_f * int_p^q dp1 int_{p1}^q f1
// at the characteristic point cp of the given lobe.
double dalembert_u(int region, const TraceFn& tau, const TraceFn& nu, const SourceTerm& s,
                   CharPoint cp, double quad_tol = 1e-10);

// (u_xi, u_eta) of the same representation, by analytic differentiation.
std::pair<double, double> dalembert_grad(int region, const TraceFn& tau, const TraceFn& nu,
                                         const SourceTerm& s, CharPoint cp,
                                         double quad_tol = 1e-10);

// Right-hand side of the functional relation on type-change line i:
//   region 1: (1-s1) tau' - (1+s1) nu = A1
//   region 2: (1+s2) tau' + (1-s2) nu = A2
//   region 3: (1+s3) tau' + (1-s3) nu = A3
// with A_i(t) = 2 a_i int_t^{upsilon(t)} f1(t,q) dq + 2 b_i int_{rho(t)}^t f1(p,t) dp,
// (a,b) = (s1, 1), (s2, -1), (1, -s3).
double compute_A(int i, double t, double sigma_i, const SourceTerm& s, const CharMaps& maps,
                 double quad_tol = 1e-10);

} // namespace mixtype
