#include "mixtype/source.hpp"

#include "mixtype/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mixtype {

namespace {

struct BilinearTable {
    std::vector<double> xs, ys, v;

    int find(const std::vector<double>& g, double t) const {
        int lo = 0, hi = static_cast<int>(g.size()) - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (g[mid] <= t ? lo : hi) = mid;
        }
        return lo;
    }

    double value(double x, double y) const {
        const double ex = 1e-12;
        if (x < xs.front() - ex || x > xs.back() + ex || y < ys.front() - ex ||
            y > ys.back() + ex)
            throw DomainError("tabulated source queried outside its grid");
        x = std::clamp(x, xs.front(), xs.back());
        y = std::clamp(y, ys.front(), ys.back());
        const int i = find(xs, x), j = find(ys, y);
        const double tx = (x - xs[i]) / (xs[i + 1] - xs[i]);
        const double ty = (y - ys[j]) / (ys[j + 1] - ys[j]);
        const int nx = static_cast<int>(xs.size());
        const double v00 = v[j * nx + i], v10 = v[j * nx + i + 1];
        const double v01 = v[(j + 1) * nx + i], v11 = v[(j + 1) * nx + i + 1];
        return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 +
               tx * ty * v11;
    }
};

// Closure of the largest domain any admissible curve set can produce: the unit
// square plus the three characteristic triangles hanging off AB, AD and BC.
bool in_max_closure(double x, double y) {
    const double e = 1e-9;
    const double xi = x + y, eta = x - y;
    if (x >= -e && x <= 1.0 + e && y >= -e && y <= 1.0 + e) return true;            // square
    if (xi >= -e && eta <= 1.0 + e && xi <= eta + e && y <= e) return true;         // under AB
    if (xi >= -e && -eta <= 1.0 + e && xi <= -eta + e && x <= e) return true;       // left of AD
    if (xi + eta >= 2.0 - e && xi <= 2.0 + e && eta <= 1.0 + e && x >= 1.0 - e)
        return true; // right of BC
    return false;
}

} // namespace

SourceTerm SourceTerm::from_expr(Expr e, bool smooth_claim) {
    SourceTerm s;
    s.f_ = [e](double x, double y) { return e.eval(x, y); };
    s.smooth_claim_ = smooth_claim;
    return s;
}

SourceTerm SourceTerm::from_table(std::vector<double> xs, std::vector<double> ys,
                                  std::vector<double> values, bool smooth_claim) {
    if (xs.size() < 2 || ys.size() < 2 || values.size() != xs.size() * ys.size())
        throw DomainError("source table must be a complete regular grid");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw DomainError("source table x grid must strictly increase");
    for (std::size_t j = 1; j < ys.size(); ++j)
        if (!(ys[j] > ys[j - 1])) throw DomainError("source table y grid must strictly increase");
    auto tab = std::make_shared<BilinearTable>();
    tab->xs = std::move(xs);
    tab->ys = std::move(ys);
    tab->v = std::move(values);
    SourceTerm s;
    s.f_ = [tab](double x, double y) { return tab->value(x, y); };
    s.smooth_claim_ = smooth_claim;
    return s;
}

SourceTerm SourceTerm::from_function(std::function<double(double, double)> f, bool smooth_claim) {
    SourceTerm s;
    s.f_ = std::move(f);
    s.smooth_claim_ = smooth_claim;
    return s;
}

SourceTerm SourceTerm::zero() {
    return from_function([](double, double) { return 0.0; });
}

double SourceTerm::operator()(double x, double y) const {
    if (!f_) return 0.0;
    const double v = f_(x, y);
    if (!std::isfinite(v)) throw DomainError("source value not finite");
    return v;
}

double SourceTerm::f1(CharPoint cp) const {
    const Point p = from_char(cp);
    if (!in_max_closure(p.x, p.y))
        throw DomainError("f1 queried outside the closure of the mixed domain");
    return 0.25 * (*this)(p);
}

double f1_eval(const SourceTerm& s, CharPoint cp) { return s.f1(cp); }

} // namespace mixtype
