#include "mixtype/geometry.hpp"

#include "mixtype/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace mixtype {

std::string to_string(PointClass c) {
    switch (c) {
    case PointClass::Omega0: return "Omega0";
    case PointClass::Omega1: return "Omega1";
    case PointClass::Omega2: return "Omega2";
    case PointClass::Omega3: return "Omega3";
    case PointClass::OnInterface: return "Interface";
    case PointClass::Outside: return "Outside";
    }
    return "?";
}

double solve_increasing(const std::function<double(double)>& f, double target, double lo,
                        double hi, double tol) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    const double slack = 1e-9;
    if (flo > slack || fhi < -slack)
        throw NoIntersection("monotone solve: target outside bracket");
    if (flo >= 0.0) return lo;
    if (fhi <= 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        // Secant candidate safeguarded inside the bracket; every other step is
        // a plain bisection so the bracket provably halves.
        double mid;
        if (it % 2 == 0) {
            mid = lo + (hi - lo) * (-flo) / (fhi - flo);
            const double margin = 0.01 * (hi - lo);
            mid = std::clamp(mid, lo + margin, hi - margin);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double fm = f(mid) - target;
        if (fm == 0.0) return mid;
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo < tol) break;
    }
    return 0.5 * (lo + hi);
}

TypeChangeCurve::TypeChangeCurve(int index, std::function<double(double)> g,
                                 std::function<double(double)> gp)
    : index_(index), gamma_(std::move(g)), gamma_prime_(std::move(gp)) {
    if (index_ < 1 || index_ > 3) throw CurveInvalid("curve index must be 1, 2 or 3");
}

TypeChangeCurve TypeChangeCurve::bump(int index, double c) {
    const double base = index == 3 ? 1.0 : 0.0;
    return TypeChangeCurve(
        index, [base, c](double t) { return base + c * t * (1.0 - t); },
        [c](double t) { return c * (1.0 - 2.0 * t); });
}

TypeChangeCurve TypeChangeCurve::from_function(int index, std::function<double(double)> gamma,
                                               std::function<double(double)> gamma_prime) {
    return TypeChangeCurve(index, std::move(gamma), std::move(gamma_prime));
}

namespace {

// Fritsch-Butland limited slopes: C1, no overshoot, exact on locally monotone data.
struct Pchip {
    std::vector<double> t, v, m;

    Pchip(std::vector<std::pair<double, double>> rows) {
        std::sort(rows.begin(), rows.end());
        const int n = static_cast<int>(rows.size());
        if (n < 4) throw CurveInvalid("curve table needs at least 4 rows");
        t.resize(n);
        v.resize(n);
        m.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            t[i] = rows[i].first;
            v[i] = rows[i].second;
            if (i > 0 && !(t[i] > t[i - 1]))
                throw CurveInvalid("curve table parameters must strictly increase");
        }
        std::vector<double> d(n - 1), hs(n - 1);
        for (int i = 0; i < n - 1; ++i) {
            hs[i] = t[i + 1] - t[i];
            d[i] = (v[i + 1] - v[i]) / hs[i];
        }
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for (int i = 1; i < n - 1; ++i) {
            if (d[i - 1] * d[i] > 0.0) {
                const double a = (hs[i - 1] + 2.0 * hs[i]) / (3.0 * (hs[i - 1] + hs[i]));
                m[i] = d[i - 1] * d[i] / (a * d[i] + (1.0 - a) * d[i - 1]);
            }
        }
    }

    int cell(double x) const {
        int lo = 0, hi = static_cast<int>(t.size()) - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (t[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    double value(double x) const {
        x = std::clamp(x, t.front(), t.back());
        const int j = cell(x);
        const double hh = t[j + 1] - t[j], s = (x - t[j]) / hh;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v[j] + hh * (s3 - 2 * s2 + s) * m[j] +
               (-2 * s3 + 3 * s2) * v[j + 1] + hh * (s3 - s2) * m[j + 1];
    }

    double deriv(double x) const {
        x = std::clamp(x, t.front(), t.back());
        const int j = cell(x);
        const double hh = t[j + 1] - t[j], s = (x - t[j]) / hh;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * v[j] + hh * (3 * s2 - 4 * s + 1) * m[j] +
                (-6 * s2 + 6 * s) * v[j + 1] + hh * (3 * s2 - 2 * s) * m[j + 1]) /
               hh;
    }
};

} // namespace

TypeChangeCurve TypeChangeCurve::table(int index, std::vector<std::pair<double, double>> rows) {
    auto interp = std::make_shared<Pchip>(std::move(rows));
    auto other = interp;
    return TypeChangeCurve(
        index, [interp](double t) { return interp->value(t); },
        [other](double t) { return other->deriv(t); });
}

double TypeChangeCurve::p_of(double t) const {
    return index_ == 3 ? t + gamma_(t) - 1.0 : t - gamma_(t);
}

double TypeChangeCurve::q_of(double t) const {
    return index_ == 3 ? t + 1.0 - gamma_(t) : t + gamma_(t);
}

double TypeChangeCurve::t_of_p(double p) const {
    return solve_increasing([this](double t) { return p_of(t); }, p, 0.0, 1.0, 1e-14);
}

double TypeChangeCurve::t_of_q(double q) const {
    return solve_increasing([this](double t) { return q_of(t); }, q, 0.0, 1.0, 1e-14);
}

void TypeChangeCurve::validate() const {
    const double base = index_ == 3 ? 1.0 : 0.0;
    if (std::abs(gamma_(0.0) - base) > 1e-12 || std::abs(gamma_(1.0) - base) > 1e-12)
        throw CurveInvalid("curve endpoint values do not match the line endpoints");

    const int n = 101;
    std::vector<double> ps(n), qs(n), gs(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        ps[i] = p_of(t);
        qs[i] = q_of(t);
        gs[i] = gamma_(t);
        if (!std::isfinite(gs[i])) throw CurveInvalid("curve value not finite");
    }
    for (int i = 1; i < n; ++i)
        if (!(ps[i] > ps[i - 1]) || !(qs[i] > qs[i - 1]))
            throw NonMonotone("characteristic image t +/- gamma(t) must strictly increase");

    // Strict interior of the characteristic triangle, except at the endpoints.
    for (int i = 1; i < n - 1; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        bool ok;
        if (index_ == 3)
            ok = gs[i] > 1.0 && gs[i] < 1.0 + t && gs[i] < 2.0 - t;
        else
            ok = gs[i] > 0.0 && gs[i] < t && gs[i] < 1.0 - t;
        if (!ok)
            throw CurveInvalid("curve leaves the strict interior of its characteristic triangle");
    }

    // Smoothness heuristic: bounded second differences of the samples.
    const double hh = 1.0 / (n - 1);
    for (int i = 1; i < n - 1; ++i) {
        const double dd = (gs[i + 1] - 2.0 * gs[i] + gs[i - 1]) / (hh * hh);
        if (!std::isfinite(dd) || std::abs(dd) > 1e4)
            throw CurveInvalid("curve samples fail the smoothness check");
    }
}

CharMaps::CharMaps(TypeChangeCurve curve) : curve_(std::move(curve)) {}

double CharMaps::upsilon(double p) const { return curve_.q_of(curve_.t_of_p(p)); }

double CharMaps::rho(double q) const { return curve_.p_of(curve_.t_of_q(q)); }

CharMaps build_char_maps(const TypeChangeCurve& curve) {
    const int n = 101;
    double prev_p = curve.p_of(0.0), prev_q = curve.q_of(0.0);
    for (int i = 1; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double p = curve.p_of(t), q = curve.q_of(t);
        if (!(p > prev_p) || !(q > prev_q))
            throw NonMonotone("characteristic image t +/- gamma(t) must strictly increase");
        prev_p = p;
        prev_q = q;
    }
    return CharMaps(curve);
}

Point affix(int i, double t, bool starred, const TypeChangeCurve& curve) {
    if (curve.index() != i) throw CurveInvalid("affix: curve index mismatch");
    if (t < -1e-12 || t > 1.0 + 1e-12) throw NoIntersection("affix parameter outside [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    // Unstarred characteristics carry the q coordinate for i=1,2 and the p
    // coordinate for i=3; starred the other one.
    const bool use_q = (i == 3) ? starred : !starred;
    const double s = use_q ? curve.t_of_q(t) : curve.t_of_p(t);
    switch (i) {
    case 1: return {s, -curve.gamma(s)};
    case 2: return {-curve.gamma(s), s};
    default: return {curve.gamma(s), s};
    }
}

PointClass classify(Point pt, const TypeChangeCurve& g1, const TypeChangeCurve& g2,
                    const TypeChangeCurve& g3) {
    const double eps = 1e-12;
    const double x = pt.x, y = pt.y;
    if (std::abs(y) <= eps && x >= -eps && x <= 1.0 + eps) return PointClass::OnInterface; // AB
    if (std::abs(x) <= eps && y >= -eps && y <= 1.0 + eps) return PointClass::OnInterface; // AD
    if (std::abs(x - 1.0) <= eps && y >= -eps && y <= 1.0 + eps)
        return PointClass::OnInterface; // BC
    if (x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) return PointClass::Omega0;
    if (y < 0.0 && x > 0.0 && x < 1.0 && y > -g1.gamma(x)) return PointClass::Omega1;
    if (x < 0.0 && y > 0.0 && y < 1.0 && x > -g2.gamma(y)) return PointClass::Omega2;
    if (x > 1.0 && y > 0.0 && y < 1.0 && x < g3.gamma(y)) return PointClass::Omega3;
    return PointClass::Outside;
}

} // namespace mixtype
