#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace mixtype {

// A one-dimensional trace function sampled on the uniform grid t_0..t_M of [0,1],
// evaluated between nodes by C1 cubic Hermite interpolation. Node slopes are
// either supplied (when the producer knows exact derivatives, e.g. the Volterra
// unknowns are themselves derivatives) or estimated by second-order differences.
class TraceFn {
public:
    TraceFn() = default;
    explicit TraceFn(std::vector<double> values,
                     std::optional<std::vector<double>> deriv_values = std::nullopt);

    // Samples a closure on M+1 nodes.
    static TraceFn sample(const std::function<double(double)>& f, int M);
    static TraceFn sample(const std::function<double(double)>& f,
                          const std::function<double(double)>& fprime, int M);
    static TraceFn zero(int M);

    double value(double t) const;
    double deriv(double t) const;

    int grid_m() const { return static_cast<int>(values_.size()) - 1; }
    double h() const { return 1.0 / grid_m(); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& slopes() const { return slopes_; }
    bool has_exact_derivs() const { return exact_derivs_; }

    // Antiderivative with F(0) = anchor, exact for the stored interpolant.
    // Result carries this function's node values as its slopes.
    TraceFn antiderivative(double anchor) const;

    TraceFn scaled(double factor) const;
    double max_abs() const;

private:
    std::vector<double> values_;
    std::vector<double> slopes_;
    bool exact_derivs_ = false;

    void locate(double t, int& j, double& s) const;
};

} // namespace mixtype
