#include "mixtype/traces.hpp"

#include "mixtype/errors.hpp"
#include "mixtype/parabolic.hpp"
#include "mixtype/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mixtype {

void Sigma::validate() const {
    if (!(std::isfinite(s1) && std::isfinite(s2) && std::isfinite(s3)))
        throw SigmaInvalid("sigma coefficients must be finite");
    if (std::abs(s1 - 1.0) < 1e-14 || std::abs(s1 + 1.0) < 1e-14)
        throw SigmaInvalid("sigma1 = +/-1 degenerates the trace equation on AB");
    if (!(std::abs(s2) < 1.0))
        throw SigmaInvalid("sigma2 must lie strictly inside (-1, 1)");
    if (!(std::abs(s3) < 1.0))
        throw SigmaInvalid("sigma3 must lie strictly inside (-1, 1)");
}

TraceFn solve_tau1(const Sigma& sig, const SourceTerm& s, const std::function<double(double)>& A1,
                   int M, double quad_tol) {
    sig.validate();
    if (M < 16) throw SolverError("solve_tau1 requires M >= 16");
    const double lam = sig.lambda();
    if (std::abs(lam) > 500.0)
        throw SigmaInvalid("sigma1 too close to -1 for the exponential trace formula");
    (void)quad_tol; // panel Gauss below is already well past the requested tolerance

    auto fstar = [&](double t) { return s(t, 0.0) - A1(t) / (1.0 + sig.s1); };

    const double h = 1.0 / M;
    const double egrow = std::exp(lam * h);
    // I_k = int_0^{x_k} e^{lam (x_k - t)} fstar dt, S_k = int_0^{x_k} fstar dt.
    std::vector<double> I(M + 1, 0.0), S(M + 1, 0.0);
    for (int k = 1; k <= M; ++k) {
        const double xk = static_cast<double>(k) / M;
        auto decayed = [&](double t) { return std::exp(lam * (xk - t)) * fstar(t); };
        I[k] = egrow * I[k - 1] + quad::gl_panel(decayed, xk - h, xk, 12);
        S[k] = S[k - 1] + quad::gl_panel(fstar, xk - h, xk, 12);
    }
    const double C = I[M] - S[M]; // int_0^1 (e^{lam(1-t)} - 1) fstar dt
    const double denom = std::exp(lam) - 1.0;

    std::vector<double> vals(M + 1), ders(M + 1);
    for (int k = 0; k <= M; ++k) {
        const double xk = static_cast<double>(k) / M;
        const double ex = std::exp(lam * xk);
        vals[k] = ((I[k] - S[k]) - (ex - 1.0) / denom * C) / lam;
        ders[k] = I[k] - ex / denom * C;
    }
    return TraceFn(std::move(vals), std::move(ders));
}

double build_E(double y, int which, const Sigma& sig, const TraceFn& tau1, const SourceTerm& s,
               const std::function<double(double)>& A2, const std::function<double(double)>& A3,
               const KernelConfig& cfg, double quad_tol) {
    if (which == 1)
        return A2(y) / (1.0 - sig.s2) + trace_N_layer(0.0, y, tau1, cfg, quad_tol) -
               source_Gx_volume(0.0, y, s, cfg, quad_tol);
    if (which == 2)
        return A3(y) / (1.0 - sig.s3) - trace_N_layer(1.0, y, tau1, cfg, quad_tol) +
               source_Gx_volume(1.0, y, s, cfg, quad_tol);
    throw SolverError("build_E: which must be 1 or 2");
}

VolterraGrid volterra_march(double c2, double c3, const VolterraKernels& kernels,
                            const std::function<double(double)>& E1,
                            const std::function<double(double)>& E2, int M) {
    if (M < 16) throw SolverError("volterra_march requires M >= 16");
    const double h = 1.0 / M;

    // Product-trapezoidal moments for int (y_k - t)^(-1/2) over the panel at
    // distance d: A(d) weights the farther node, B(d) the nearer one.
    std::vector<double> A(M + 1, 0.0), B(M + 1, 0.0);
    for (int d = 1; d <= M; ++d) {
        const double a = d * h, b = (d - 1) * h;
        const double m0 = 2.0 * (std::sqrt(a) - std::sqrt(b));
        const double m1 =
            (4.0 / 3.0) * a * std::sqrt(a) - 2.0 * a * std::sqrt(b) + (2.0 / 3.0) * b * std::sqrt(b);
        A[d] = m0 - m1 / h;
        B[d] = m1 / h;
    }

    std::vector<double> Hd0(M + 1), Hd1(M + 1), Kc01(M + 1), Kc10(M + 1);
    for (int d = 0; d <= M; ++d) {
        const double sdist = d * h;
        Hd0[d] = kernels.H_diag0(sdist);
        Hd1[d] = kernels.H_diag1(sdist);
        Kc01[d] = kernels.K_cross01(sdist);
        Kc10[d] = kernels.K_cross10(sdist);
    }

    VolterraGrid g;
    g.nodes.resize(M + 1);
    g.tau2p_deriv.assign(M + 1, 0.0);
    g.tau3m_deriv.assign(M + 1, 0.0);
    g.rhs1.resize(M + 1);
    g.rhs2.resize(M + 1);
    for (int k = 0; k <= M; ++k) {
        g.nodes[k] = static_cast<double>(k) / M;
        g.rhs1[k] = E1(g.nodes[k]);
        g.rhs2[k] = E2(g.nodes[k]);
    }

    if (std::abs(c2) < 1e-14 || std::abs(c3) < 1e-14)
        throw StepSingular("volterra_march: vanishing leading coefficient");
    g.tau2p_deriv[0] = g.rhs1[0] / c2;
    g.tau3m_deriv[0] = g.rhs2[0] / c3;

    for (int k = 1; k <= M; ++k) {
        double acc1 = 0.0, acc2 = 0.0; // history sums over j < k
        for (int j = 0; j < k; ++j) {
            const int d = k - j;
            const double w = (j == 0) ? A[d] : A[d] + B[d + 1];
            const double trap = (j == 0) ? 0.5 * h : h;
            acc1 += w * Hd0[d] * g.tau2p_deriv[j] - trap * Kc01[d] * g.tau3m_deriv[j];
            acc2 += w * Hd1[d] * g.tau3m_deriv[j] - trap * Kc10[d] * g.tau2p_deriv[j];
        }
        // 2x2 step system for the two new nodal values.
        const double a11 = c2 + B[1] * Hd0[0];
        const double a12 = -0.5 * h * Kc01[0];
        const double a21 = -0.5 * h * Kc10[0];
        const double a22 = c3 + B[1] * Hd1[0];
        const double det = a11 * a22 - a12 * a21;
        const double scale = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
        if (!(std::abs(det) > 1e-12 * scale * scale))
            throw StepSingular("volterra_march: singular 2x2 step system");
        const double b1 = g.rhs1[k] - acc1;
        const double b2 = g.rhs2[k] - acc2;
        g.tau2p_deriv[k] = (b1 * a22 - b2 * a12) / det;
        g.tau3m_deriv[k] = (a11 * b2 - a21 * b1) / det;
    }
    return g;
}

VolterraGrid solve_volterra(const Sigma& sig, const std::function<double(double)>& E1,
                            const std::function<double(double)>& E2, const KernelConfig& cfg,
                            int M) {
    sig.validate();
    // Diagonal kernel: sqrt(s) N(0,y;0,y-s) = sum_n exp(-n^2/s)/sqrt(pi), the
    // same at both walls. Cross kernel: N(0,y;1,y-s), exponentially small at s=0.
    auto h_diag = [&cfg](double s) {
        if (s <= 0.0) return 1.0 / std::sqrt(M_PI);
        return std::sqrt(s) * kernel_N(0.0, s, 0.0, 0.0, cfg);
    };
    auto k_cross = [&cfg](double s) {
        if (s <= 0.0) return 0.0;
        return kernel_N(0.0, s, 1.0, 0.0, cfg);
    };
    VolterraKernels kernels{h_diag, h_diag, k_cross, k_cross};
    return volterra_march(sig.c2(), sig.c3(), kernels, E1, E2, M);
}

TraceFn recover_nu(int i, const TraceFn& tau, const std::function<double(double)>& A,
                   const Sigma& sig) {
    sig.validate();
    const int M = tau.grid_m();
    std::vector<double> v(M + 1);
    for (int k = 0; k <= M; ++k) {
        const double t = static_cast<double>(k) / M;
        const double tp = tau.deriv(t);
        switch (i) {
        case 1: v[k] = ((1.0 - sig.s1) * tp - A(t)) / (1.0 + sig.s1); break;
        case 2: v[k] = (A(t) - (1.0 + sig.s2) * tp) / (1.0 - sig.s2); break;
        case 3: v[k] = (A(t) - (1.0 + sig.s3) * tp) / (1.0 - sig.s3); break;
        default: throw SolverError("recover_nu: line index must be 1, 2 or 3");
        }
    }
    return TraceFn(std::move(v));
}

TraceFn integrate_deriv(const TraceFn& tau_deriv, double anchor) {
    return tau_deriv.antiderivative(anchor);
}

} // namespace mixtype
