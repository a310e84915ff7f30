#pragma once

#include "mixtype/kernels.hpp"
#include "mixtype/source.hpp"
#include "mixtype/trace_fn.hpp"

#include <functional>
#include <vector>

namespace mixtype {

// Nonlocal coupling coefficients. The constructive solve divides by 1 +/- s_i
// throughout, so s1 = +/-1 is rejected and s2, s3 must lie strictly inside (-1,1).
struct Sigma {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    void validate() const; // throws SigmaInvalid
    double lambda() const { return (1.0 - s1) / (1.0 + s1); }
    double c2() const { return (1.0 + s2) / (1.0 - s2); }
    double c3() const { return (1.0 + s3) / (1.0 - s3); }
};

// Trace on AB from the closed-form solution of
//   tau'' - lambda tau' = fstar,  tau(0) = tau(1) = 0,
// with fstar(x) = f(x,0) - A1(x)/(1+s1). Node derivatives are exact.
TraceFn solve_tau1(const Sigma& sig, const SourceTerm& s, const std::function<double(double)>& A1,
                   int M, double quad_tol = 1e-10);

// Right-hand sides of the coupled Volterra system for (tau2', tau3'):
//   E1(y) = A2(y)/(1-s2) + int_0^1 tau1'(x1) N(0,y;x1,0) dx1 - int int f G_x(0,y;..)
//   E2(y) = A3(y)/(1-s3) - int_0^1 tau1'(x1) N(1,y;x1,0) dx1 + int int f G_x(1,y;..)
double build_E(double y, int which, const Sigma& sig, const TraceFn& tau1, const SourceTerm& s,
               const std::function<double(double)>& A2, const std::function<double(double)>& A3,
               const KernelConfig& cfg, double quad_tol = 1e-10);

struct VolterraGrid {
    std::vector<double> nodes;
    std::vector<double> tau2p_deriv;
    std::vector<double> tau3m_deriv;
    std::vector<double> rhs1;
    std::vector<double> rhs2;
};

// Kernels of the generic causal system
//   c2 u(y) + int_0^y (y-t)^(-1/2) Hd0(y-t) u(t) dt - int_0^y K01(y-t) v(t) dt = E1(y)
//   c3 v(y) + int_0^y (y-t)^(-1/2) Hd1(y-t) v(t) dt - int_0^y K10(y-t) u(t) dt = E2(y).
// The singular factor is integrated exactly against piecewise-linear
// interpolants (product trapezoidal rule); cross kernels use plain trapezoid.
struct VolterraKernels {
    std::function<double(double)> H_diag0;
    std::function<double(double)> H_diag1;
    std::function<double(double)> K_cross01;
    std::function<double(double)> K_cross10;
};

VolterraGrid volterra_march(double c2, double c3, const VolterraKernels& kernels,
                            const std::function<double(double)>& E1,
                            const std::function<double(double)>& E2, int M);

// The concrete system on the walls x=0 and x=1 with the strip kernel N.
VolterraGrid solve_volterra(const Sigma& sig, const std::function<double(double)>& E1,
                            const std::function<double(double)>& E2, const KernelConfig& cfg,
                            int M);

// Normal-derivative traces from the functional relations:
//   nu1 = [(1-s1) tau1' - A1]/(1+s1)   (d/dy on AB)
//   nu2 = [A2 - (1+s2) tau2']/(1-s2)   (d/d(-x) on AD)
//   nu3 = [A3 - (1+s3) tau3']/(1-s3)   (d/dx on BC)
TraceFn recover_nu(int i, const TraceFn& tau, const std::function<double(double)>& A,
                   const Sigma& sig);

TraceFn integrate_deriv(const TraceFn& tau_deriv, double anchor);

} // namespace mixtype
