#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mixtype {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Characteristic coordinates xi = x+y, eta = x-y.
struct CharPoint {
    double xi = 0.0;
    double eta = 0.0;
};

inline CharPoint to_char(Point p) { return {p.x + p.y, p.x - p.y}; }
inline Point from_char(CharPoint c) { return {0.5 * (c.xi + c.eta), 0.5 * (c.xi - c.eta)}; }

enum class PointClass { Omega0, Omega1, Omega2, Omega3, OnInterface, Outside };

std::string to_string(PointClass c);

// One of the three curves bounding a hyperbolic lobe:
//   index 1:  y = -gamma(x), gamma(0) = gamma(1) = 0, below AB
//   index 2:  x = -gamma(y), gamma(0) = gamma(1) = 0, left of AD
//   index 3:  x =  gamma(y), gamma(0) = gamma(1) = 1, right of BC
// Each curve is described in its lobe's local characteristic coordinates (p,q)
// through the images p_of(t), q_of(t), both strictly increasing on [0,1].
class TypeChangeCurve {
public:
    static TypeChangeCurve bump(int index, double c);
    static TypeChangeCurve table(int index, std::vector<std::pair<double, double>> rows);
    static TypeChangeCurve from_function(int index, std::function<double(double)> gamma,
                                         std::function<double(double)> gamma_prime);

    int index() const { return index_; }
    double gamma(double t) const { return gamma_(t); }
    double gamma_prime(double t) const { return gamma_prime_(t); }

    // Local characteristic image of the curve point at parameter t.
    double p_of(double t) const;
    double q_of(double t) const;

    // Parameter of the curve point with the given local characteristic value;
    // bracketed root finding on the monotone image, tolerance 1e-12.
    double t_of_p(double p) const;
    double t_of_q(double q) const;

    // Checks endpoint values, strict monotonicity of the images, the strict
    // interior position inside the characteristic triangle, and a finite-
    // difference smoothness heuristic, all on a 101-point grid.
    // Throws NonMonotone or CurveInvalid.
    void validate() const;

private:
    TypeChangeCurve(int index, std::function<double(double)> g, std::function<double(double)> gp);

    int index_;
    std::function<double(double)> gamma_;
    std::function<double(double)> gamma_prime_;
};

// Monotone maps between the two local characteristic coordinates along a curve:
// q = upsilon(p) and p = rho(q), with rho(upsilon(s)) = s.
class CharMaps {
public:
    explicit CharMaps(TypeChangeCurve curve);

    double upsilon(double p) const;
    double rho(double q) const;
    const TypeChangeCurve& curve() const { return curve_; }

private:
    TypeChangeCurve curve_;
};

// Throws NonMonotone if the sampled characteristic image of the curve is not
// strictly increasing.
CharMaps build_char_maps(const TypeChangeCurve& curve);

// Intersection of curve gamma_i with the characteristic through the type-line
// point at parameter t. Unstarred characteristics: x-y=t (i=1), y-x=t (i=2),
// x+y=1+t (i=3); starred: x+y=t (i=1,2), x-y=1-t (i=3).
Point affix(int i, double t, bool starred, const TypeChangeCurve& curve);

PointClass classify(Point p, const TypeChangeCurve& g1, const TypeChangeCurve& g2,
                    const TypeChangeCurve& g3);

// Monotone increasing scalar equation f(t) = target on [lo,hi], bisection with
// secant acceleration; throws NoIntersection when the target is out of range.
double solve_increasing(const std::function<double(double)>& f, double target, double lo,
                        double hi, double tol = 1e-13);

} // namespace mixtype
