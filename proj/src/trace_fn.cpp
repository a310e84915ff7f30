#include "mixtype/trace_fn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mixtype {

TraceFn::TraceFn(std::vector<double> values, std::optional<std::vector<double>> deriv_values)
    : values_(std::move(values)) {
    const int m = static_cast<int>(values_.size()) - 1;
    if (m < 8) throw std::invalid_argument("TraceFn requires at least 9 nodes (M >= 8)");
    if (deriv_values) {
        if (deriv_values->size() != values_.size())
            throw std::invalid_argument("TraceFn derivative sample count mismatch");
        slopes_ = std::move(*deriv_values);
        exact_derivs_ = true;
        return;
    }
    // Second-order slope estimates: centered interior, one-sided at the ends.
    const double hh = 1.0 / m;
    slopes_.resize(values_.size());
    slopes_[0] = (-3.0 * values_[0] + 4.0 * values_[1] - values_[2]) / (2.0 * hh);
    for (int j = 1; j < m; ++j) slopes_[j] = (values_[j + 1] - values_[j - 1]) / (2.0 * hh);
    slopes_[m] = (3.0 * values_[m] - 4.0 * values_[m - 1] + values_[m - 2]) / (2.0 * hh);
}

TraceFn TraceFn::sample(const std::function<double(double)>& f, int M) {
    std::vector<double> v(M + 1);
    for (int j = 0; j <= M; ++j) v[j] = f(static_cast<double>(j) / M);
    return TraceFn(std::move(v));
}

TraceFn TraceFn::sample(const std::function<double(double)>& f,
                        const std::function<double(double)>& fprime, int M) {
    std::vector<double> v(M + 1), d(M + 1);
    for (int j = 0; j <= M; ++j) {
        const double t = static_cast<double>(j) / M;
        v[j] = f(t);
        d[j] = fprime(t);
    }
    return TraceFn(std::move(v), std::move(d));
}

TraceFn TraceFn::zero(int M) {
    return TraceFn(std::vector<double>(M + 1, 0.0), std::vector<double>(M + 1, 0.0));
}

void TraceFn::locate(double t, int& j, double& s) const {
    const int m = grid_m();
    // Clamp tiny excursions from root finding / characteristic arithmetic.
    t = std::clamp(t, 0.0, 1.0);
    j = std::min(static_cast<int>(t * m), m - 1);
    s = t * m - j;
}

double TraceFn::value(double t) const {
    int j;
    double s;
    locate(t, j, s);
    const double hh = h();
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * values_[j] + hh * h10 * slopes_[j] + h01 * values_[j + 1] + hh * h11 * slopes_[j + 1];
}

double TraceFn::deriv(double t) const {
    int j;
    double s;
    locate(t, j, s);
    const double hh = h();
    const double s2 = s * s;
    const double d00 = 6.0 * s2 - 6.0 * s;
    const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double d01 = -6.0 * s2 + 6.0 * s;
    const double d11 = 3.0 * s2 - 2.0 * s;
    return (d00 * values_[j] + hh * d10 * slopes_[j] + d01 * values_[j + 1] + hh * d11 * slopes_[j + 1]) / hh;
}

TraceFn TraceFn::antiderivative(double anchor) const {
    const int m = grid_m();
    const double hh = h();
    std::vector<double> acc(m + 1);
    acc[0] = anchor;
    for (int j = 0; j < m; ++j) {
        // Exact integral of the Hermite piece: corrected trapezoid.
        const double piece = hh * (0.5 * (values_[j] + values_[j + 1]) +
                                   hh * (slopes_[j] - slopes_[j + 1]) / 12.0);
        acc[j + 1] = acc[j] + piece;
    }
    return TraceFn(std::move(acc), values_);
}

TraceFn TraceFn::scaled(double factor) const {
    std::vector<double> v(values_), d(slopes_);
    for (double& x : v) x *= factor;
    for (double& x : d) x *= factor;
    return TraceFn(std::move(v), std::move(d));
}

double TraceFn::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

} // namespace mixtype
