#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mixtype::quad {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1], computed once by
// Newton iteration on the Legendre recurrence (no tabulated constants).
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);

using Fn1 = std::function<double(double)>;

// Single-panel Gauss-Legendre on [a,b]; orientation-signed (a > b flips the sign).
double gl_panel(const Fn1& f, double a, double b, int n = 15);

// Adaptive bisected Gauss-Legendre with absolute tolerance `tol`.
// Pre-splits at `knots` that fall inside (a,b) so sharply peaked integrands
// (narrow heat kernels) cannot slip between the nodes of a coarse panel.
// Signed in the same way as gl_panel.
double adaptive(const Fn1& f, double a, double b, double tol,
                std::span<const double> knots = {}, int max_depth = 20);

// Integral of g over the time layer:  int_0^y g(y1) dy1  with the substitution
// y1 = y - w^2, which regularizes integrands behaving like (y-y1)^(-1/2).
// `knots` are expressed in w = sqrt(y-y1).
double time_layer(const Fn1& g_of_y1, double y, double tol,
                  std::span<const double> w_knots = {});

// Fixed composite Gauss over [a,b], split at the given knots and then into
// `refine` equal parts per segment. No error feedback; used where the caller
// already knows the integrand's scales (layer potentials in the sqrt(y-y1)
// variable) and nested adaptivity would chase quadrature noise instead.
double composite(const Fn1& f, double a, double b, std::span<const double> knots, int n = 12,
                 int refine = 1);

// Octave-spaced knots {scale, 2 scale, 4 scale, ...} inside (0, hi), for
// integrands with a peak of width ~scale followed by a power-law tail.
std::vector<double> octave_knots(double scale, double hi);

} // namespace mixtype::quad
