#include "mixtype/parabolic.hpp"

#include "mixtype/errors.hpp"
#include "mixtype/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace mixtype {

namespace {

// Knots bracketing a peak of the given width; quadrature routines drop the
// ones outside the integration interval.
std::array<double, 7> peak_knots(double center, double width) {
    return {center - 4.0 * width, center - 2.0 * width, center - width, center,
            center + width, center + 2.0 * width, center + 4.0 * width};
}

// int_0^y g(y1) dy1 as a fixed composite Gauss rule in w = sqrt(y - y1).
// `w_scale <= 0` means the integrand has no short scale in w beyond wmax/8.
double layer_w(const std::function<double(double)>& g_of_y1, double y, double w_scale,
               int refine = 2) {
    if (y <= 0.0) return 0.0;
    const double wmax = std::sqrt(y);
    auto h = [&](double w) { return 2.0 * w * g_of_y1(y - w * w); };
    std::vector<double> knots = quad::octave_knots(w_scale > 0.0 ? w_scale : wmax / 8.0, wmax);
    return quad::composite(h, 0.0, wmax, knots, 14, refine);
}

} // namespace

double trace_N_layer(double x, double y, const TraceFn& tau1, const KernelConfig& cfg,
                     double quad_tol) {
    if (y <= 0.0) {
        // Limit y -> 0+: the kernel concentrates at x1 = x (plus its wall
        // image), with unit mass against the even periodic extension.
        return tau1.deriv(std::clamp(x, 0.0, 1.0));
    }
    auto f = [&](double x1) { return tau1.deriv(x1) * kernel_N(x, y, x1, 0.0, cfg); };
    const double w = 2.0 * std::sqrt(y);
    auto k1 = peak_knots(x, w);
    auto k2 = peak_knots(2.0 - x, w);
    auto k3 = peak_knots(-x, w);
    std::vector<double> knots(k1.begin(), k1.end());
    knots.insert(knots.end(), k2.begin(), k2.end());
    knots.insert(knots.end(), k3.begin(), k3.end());
    return quad::adaptive(f, 0.0, 1.0, quad_tol, knots);
}

double source_Gx_volume(double x, double y, const SourceTerm& s, const KernelConfig& cfg,
                        double quad_tol) {
    if (y <= 0.0) return 0.0;
    // Subtract the wall value of f: the remainder integrand vanishes at the
    // dipole point and its slice value decays like sqrt(y - y1), while the
    // subtracted part uses the exact primitive int_0^1 G_x dx1 = N|_0 - N|_1.
    auto smooth_slice = [&](double y1) {
        const double fw = s(x, y1);
        const double d = 2.0 * std::sqrt(std::max(y - y1, cfg.min_dt));
        auto f = [&](double x1) {
            return (s(x1, y1) - fw) * green_G_x(x, y, x1, y1, cfg);
        };
        auto k1 = peak_knots(x, d);
        auto k2 = peak_knots(2.0 - x, d);
        auto k3 = peak_knots(-x, d);
        std::vector<double> knots(k1.begin(), k1.end());
        knots.insert(knots.end(), k2.begin(), k2.end());
        knots.insert(knots.end(), k3.begin(), k3.end());
        return quad::adaptive(f, 0.0, 1.0, quad_tol, knots);
    };
    auto wall_slice = [&](double y1) {
        return s(x, y1) *
               (kernel_N(x, y, 0.0, y1, cfg) - kernel_N(x, y, 1.0, y1, cfg));
    };
    const double scale = std::min(std::min(x, 1.0 - x) < 0.25 ? 0.05 : 0.25, std::sqrt(y));
    return layer_w(smooth_slice, y, scale) + layer_w(wall_slice, y, -1.0);
}

double heat_u(Point p, const TraceFn& tau1, const TraceFn& tau2, const TraceFn& tau3,
              const SourceTerm& s, const KernelConfig& cfg, double quad_tol) {
    const double x = p.x, y = p.y;
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y <= 1.0))
        throw OutOfRegion("heat_u requires an interior point of the unit square");

    // Initial trace against G at y1 = 0.
    const double w0 = 2.0 * std::sqrt(y);
    auto f0 = [&](double x1) { return tau1.value(x1) * green_G(x, y, x1, 0.0, cfg); };
    auto k1 = peak_knots(x, w0);
    auto k2 = peak_knots(2.0 - x, w0);
    auto k3 = peak_knots(-x, w0);
    std::vector<double> knots0(k1.begin(), k1.end());
    knots0.insert(knots0.end(), k2.begin(), k2.end());
    knots0.insert(knots0.end(), k3.begin(), k3.end());
    double u = quad::adaptive(f0, 0.0, 1.0, quad_tol, knots0);

    // Side layers against G_{x1}; in w = sqrt(y-y1) the kernels peak near
    // w = x/2 (wall 0) resp. (1-x)/2 (wall 1).
    auto side0 = [&](double y1) { return tau2.value(y1) * green_G_x1(x, y, 0.0, y1, cfg); };
    auto side1 = [&](double y1) { return tau3.value(y1) * green_G_x1(x, y, 1.0, y1, cfg); };
    u += layer_w(side0, y, 0.25 * x);
    u -= layer_w(side1, y, 0.25 * (1.0 - x));

    // Volume potential; the slice tends to f(x, y1) as y1 -> y. Extra panel
    // refinement keeps its absolute error below what interior finite
    // differences of heat_u can tolerate.
    auto slice = [&](double y1) {
        const double d = 2.0 * std::sqrt(std::max(y - y1, cfg.min_dt));
        auto f = [&](double x1) { return s(x1, y1) * green_G(x, y, x1, y1, cfg); };
        return quad::adaptive(f, 0.0, 1.0, quad_tol, peak_knots(x, d));
    };
    u -= layer_w(slice, y, -1.0, 4);
    return u;
}

double heat_ux_boundary(int side, double y, const TraceFn& tau1, const TraceFn& tau2,
                        const TraceFn& tau3, const SourceTerm& s, const KernelConfig& cfg,
                        double quad_tol) {
    if (side != 0 && side != 1) throw OutOfRegion("heat_ux_boundary: side must be 0 or 1");
    if (y <= 0.0) throw InvalidTime("heat_ux_boundary requires y > 0");
    const double x = static_cast<double>(side);

    double ux = trace_N_layer(x, y, tau1, cfg, quad_tol);
    auto lay0 = [&](double y1) { return tau2.deriv(y1) * kernel_N(x, y, 0.0, y1, cfg); };
    auto lay1 = [&](double y1) { return tau3.deriv(y1) * kernel_N(x, y, 1.0, y1, cfg); };
    ux -= layer_w(lay0, y, -1.0);
    ux += layer_w(lay1, y, -1.0);
    ux -= source_Gx_volume(x, y, s, cfg, quad_tol);
    return ux;
}

} // namespace mixtype
