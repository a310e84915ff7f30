#pragma once

#include "mixtype/geometry.hpp"
#include "mixtype/kernels.hpp"
#include "mixtype/source.hpp"
#include "mixtype/trace_fn.hpp"

namespace mixtype {

// Solution of the first boundary problem for u_xx - u_y = f on the unit square:
//   u(x,y) = int_0^1 tau1(x1) G(x,y;x1,0) dx1
//          + int_0^y tau2(y1) G_{x1}(x,y;0,y1) dy1
//          - int_0^y tau3(y1) G_{x1}(x,y;1,y1) dy1
//          - int_0^1 int_0^y f G dy1 dx1.
// tau1 is the trace on AB, tau2 on AD, tau3 on BC (parabolic side).
double heat_u(Point p, const TraceFn& tau1, const TraceFn& tau2, const TraceFn& tau3,
              const SourceTerm& s, const KernelConfig& cfg, double quad_tol = 1e-10);

// Boundary flux u_x(side, y), side 0 or 1, via the integrated-by-parts form
//   u_x = int_0^1 tau1'(x1) N(x,y;x1,0) dx1 - int_0^y tau2'(y1) N(x,y;0,y1) dy1
//       + int_0^y tau3'(y1) N(x,y;1,y1) dy1 - int int f G_x,
// valid because tau1 vanishes at both ends and tau2(0) = tau3(0) = 0.
double heat_ux_boundary(int side, double y, const TraceFn& tau1, const TraceFn& tau2,
                        const TraceFn& tau3, const SourceTerm& s, const KernelConfig& cfg,
                        double quad_tol = 1e-10);

// Building blocks shared with the Volterra right-hand sides.
double trace_N_layer(double x, double y, const TraceFn& tau1, const KernelConfig& cfg,
                     double quad_tol);
double source_Gx_volume(double x, double y, const SourceTerm& s, const KernelConfig& cfg,
                        double quad_tol);

} // namespace mixtype
