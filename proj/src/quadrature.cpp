#include "mixtype/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace mixtype::quad {

namespace {

GaussRule compute_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        r.x[i] = t;
        r.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gl_panel(const Fn1& f, double a, double b, int n) {
    const GaussRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.w[i] * f(mid + half * r.x[i]);
    return acc * half;
}

namespace {

// Per-panel acceptance uses the same absolute tolerance everywhere (the global
// error is bounded by tol times the number of accepted panels). Scaling the
// tolerance with panel length would demand unattainable precision on the
// narrow panels that resolve kernel peaks. The acceptance is also floored at
// the rounding noise of the panel sums, so integrands that carry inner-
// quadrature noise cannot force full-depth splits.
double adapt_rec(const Fn1& f, double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl_panel(f, a, m);
    const double right = gl_panel(f, m, b);
    const double floor_tol = 5e-14 * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(left + right - whole) <= std::max(tol, floor_tol))
        return left + right;
    return adapt_rec(f, a, m, left, tol, depth - 1) +
           adapt_rec(f, m, b, right, tol, depth - 1);
}

} // namespace

double adaptive(const Fn1& f, double a, double b, double tol,
                std::span<const double> knots, int max_depth) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double k : knots)
        if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double la = cuts[i], lb = cuts[i + 1];
        total += adapt_rec(f, la, lb, gl_panel(f, la, lb), std::max(tol, 1e-300), max_depth);
    }
    return sign * total;
}

double time_layer(const Fn1& g_of_y1, double y, double tol,
                  std::span<const double> w_knots) {
    if (y <= 0.0) return 0.0;
    const double wmax = std::sqrt(y);
    auto h = [&](double w) { return 2.0 * w * g_of_y1(y - w * w); };
    return adaptive(h, 0.0, wmax, tol, w_knots);
}

double composite(const Fn1& f, double a, double b, std::span<const double> knots, int n,
                 int refine) {
    if (a == b) return 0.0;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double k : knots)
        if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double la = cuts[i], lb = cuts[i + 1];
        for (int r = 0; r < refine; ++r) {
            const double pa = la + (lb - la) * r / refine;
            const double pb = la + (lb - la) * (r + 1) / refine;
            acc += gl_panel(f, pa, pb, n);
        }
    }
    return acc;
}

std::vector<double> octave_knots(double scale, double hi) {
    std::vector<double> k;
    if (!(hi > 0.0)) return k;
    double w = std::clamp(scale, hi / 4096.0, hi);
    // one sub-scale knot, then octaves up to the interval end
    if (w / 2.0 > hi / 4096.0) k.push_back(w / 2.0);
    while (w < hi) {
        k.push_back(w);
        w *= 2.0;
    }
    return k;
}

} // namespace mixtype::quad
