#include "mixtype/kernels.hpp"

#include "mixtype/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mixtype {

void KernelConfig::validate() const {
    if (!(series_tol > 0.0)) throw SolverError("kernel.series_tol must be positive");
    if (n_cap < 4) throw SolverError("kernel.n_cap must be at least 4");
    if (min_dt < 0.0) throw SolverError("kernel.min_dt must be nonnegative");
}

namespace {

struct TermAccum {
    double g = 0.0, gx = 0.0, gx1 = 0.0, n = 0.0, nx1 = 0.0, ny1 = 0.0;
    double shell_max = 0.0;

    void add(double x, double x1, double s, double nn) {
        const double zm = x - x1 + 2.0 * nn;
        const double zp = x + x1 + 2.0 * nn;
        const double em = std::exp(-zm * zm / (4.0 * s));
        const double ep = std::exp(-zp * zp / (4.0 * s));
        shell_max = std::max(shell_max, std::max(em, ep));
        g += em - ep;
        n += em + ep;
        gx += (-zm * em + zp * ep) / (2.0 * s);
        gx1 += (zm * em + zp * ep) / (2.0 * s);
        nx1 += (zm * em - zp * ep) / (2.0 * s);
        ny1 += em * (1.0 - zm * zm / (2.0 * s)) / (2.0 * s) +
               ep * (1.0 - zp * zp / (2.0 * s)) / (2.0 * s);
    }
};

} // namespace

KernelValues heat_kernels(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    double s = y - y1;
    if (s <= 0.0) throw InvalidTime("heat kernel requires y1 < y");
    s = std::max(s, cfg.min_dt);

    TermAccum acc;
    acc.add(x, x1, s, 0.0);
    for (int n = 1; n <= cfg.n_cap; ++n) {
        acc.shell_max = 0.0;
        acc.add(x, x1, s, static_cast<double>(n));
        acc.add(x, x1, s, static_cast<double>(-n));
        // The exponents peak at |n| <= 1 here; past that, shells only decay.
        if (n >= 2 && acc.shell_max < cfg.series_tol) break;
    }
    const double c = 1.0 / (2.0 * std::sqrt(M_PI * s));
    KernelValues kv;
    kv.G = c * acc.g;
    kv.G_x = c * acc.gx;
    kv.G_x1 = c * acc.gx1;
    kv.N = c * acc.n;
    kv.N_x1 = c * acc.nx1;
    kv.N_y1 = c * acc.ny1;
    return kv;
}

double green_G(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).G;
}
double green_G_x(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).G_x;
}
double green_G_x1(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).G_x1;
}
double kernel_N(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).N;
}
double kernel_N_x1(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).N_x1;
}
double kernel_N_y1(double x, double y, double x1, double y1, const KernelConfig& cfg) {
    return heat_kernels(x, y, x1, y1, cfg).N_y1;
}

} // namespace mixtype
