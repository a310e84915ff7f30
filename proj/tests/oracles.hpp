// Test-only independent oracles: brute-force quadrature, long-double image
// sums, a Crank-Nicolson reference solver, bisection and a 2-D Newton step.
// Everything here is deliberately written against the mathematics directly,
// not against the library implementation it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Deterministic pseudo-random doubles in [0,1).
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    double next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

    double range(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::uint64_t state_;
};

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 100) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Newton iteration for the intersection of x - y = t with y = -gamma(x).
inline void newton_affix1(const std::function<double(double)>& gamma,
                          const std::function<double(double)>& gamma_prime, double t, double& x,
                          double& y) {
    x = t;
    y = 0.0;
    for (int i = 0; i < 80; ++i) {
        // F1 = x - y - t, F2 = y + gamma(x); J = [[1,-1],[g'(x),1]]
        const double f1 = x - y - t;
        const double f2 = y + gamma(x);
        const double gp = gamma_prime(x);
        const double det = 1.0 + gp;
        const double dx = (f1 + f2) / det;
        const double dy = (f2 - gp * f1) / det;
        x -= dx;
        y -= dy;
        if (std::abs(dx) + std::abs(dy) < 1e-15) break;
    }
}

// Iterated trapezoid of int_p^q dp1 int_{p1}^q g(p1,q1) dq1 on an n x n grid.
inline double triangle_trapezoid(const std::function<double(double, double)>& g, double p,
                                 double q, int n) {
    const double hp = (q - p) / n;
    double outer = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double p1 = p + hp * i;
        const double hq = (q - p1) / n;
        double inner = 0.0;
        if (hq != 0.0) {
            for (int j = 0; j <= n; ++j) {
                const double q1 = p1 + hq * j;
                const double w = (j == 0 || j == n) ? 0.5 : 1.0;
                inner += w * g(p1, q1);
            }
            inner *= hq;
        }
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        outer += w * inner;
    }
    return outer * hp;
}

// Long-double image sums with a wide fixed window.
inline long double green_G_long(long double x, long double y, long double x1, long double y1,
                                int window = 50) {
    const long double s = y - y1;
    long double acc = 0.0L;
    for (int n = -window; n <= window; ++n) {
        const long double zm = x - x1 + 2.0L * n;
        const long double zp = x + x1 + 2.0L * n;
        acc += std::exp(-zm * zm / (4.0L * s)) - std::exp(-zp * zp / (4.0L * s));
    }
    return acc / (2.0L * std::sqrt(static_cast<long double>(M_PI) * s));
}

inline long double kernel_N_long(long double x, long double y, long double x1, long double y1,
                                 int window = 50) {
    const long double s = y - y1;
    long double acc = 0.0L;
    for (int n = -window; n <= window; ++n) {
        const long double zm = x - x1 + 2.0L * n;
        const long double zp = x + x1 + 2.0L * n;
        acc += std::exp(-zm * zm / (4.0L * s)) + std::exp(-zp * zp / (4.0L * s));
    }
    return acc / (2.0L * std::sqrt(static_cast<long double>(M_PI) * s));
}

// Crank-Nicolson solve of u_y = u_xx on [0,1] with Dirichlet sides, uniform
// nx space nodes and nt time steps up to time t_end. Returns the final row.
inline std::vector<double> crank_nicolson(const std::function<double(double)>& initial,
                                          const std::function<double(double)>& left,
                                          const std::function<double(double)>& right, int nx,
                                          int nt, double t_end) {
    const double dx = 1.0 / (nx - 1);
    const double dt = t_end / nt;
    const double r = dt / (2.0 * dx * dx);
    std::vector<double> u(nx), rhs(nx), a(nx), b(nx), c(nx);
    for (int i = 0; i < nx; ++i) u[i] = initial(i * dx);
    for (int step = 1; step <= nt; ++step) {
        const double t_new = step * dt;
        for (int i = 1; i < nx - 1; ++i)
            rhs[i] = r * u[i - 1] + (1.0 - 2.0 * r) * u[i] + r * u[i + 1];
        rhs[0] = left(t_new);
        rhs[nx - 1] = right(t_new);
        // Thomas algorithm on [-r, 1+2r, -r] with identity boundary rows.
        a.assign(nx, -r);
        b.assign(nx, 1.0 + 2.0 * r);
        c.assign(nx, -r);
        a[0] = c[0] = 0.0;
        b[0] = 1.0;
        a[nx - 1] = c[nx - 1] = 0.0;
        b[nx - 1] = 1.0;
        for (int i = 1; i < nx; ++i) {
            const double m = a[i] / b[i - 1];
            b[i] -= m * c[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        u[nx - 1] = rhs[nx - 1] / b[nx - 1];
        for (int i = nx - 2; i >= 0; --i) u[i] = (rhs[i] - c[i] * u[i + 1]) / b[i];
    }
    return u;
}

} // namespace oracle
