#pragma once

#include "mixtype/geometry.hpp"
#include "mixtype/hyperbolic.hpp"
#include "mixtype/kernels.hpp"
#include "mixtype/parabolic.hpp"
#include "mixtype/source.hpp"
#include "mixtype/traces.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mixtype {

struct ProblemSpec {
    Sigma sigma;
    TypeChangeCurve curve1 = TypeChangeCurve::bump(1, 0.25);
    TypeChangeCurve curve2 = TypeChangeCurve::bump(2, 0.25);
    TypeChangeCurve curve3 = TypeChangeCurve::bump(3, 0.25);
    SourceTerm source = SourceTerm::zero();
    int grid_M = 256;
    KernelConfig kernel;
    double quad_tol = 1e-10;

    void validate() const;
};

// All six trace functions on the type-change lines (shared by both sides of
// each line through the C1 regularity of the solution class).
struct TraceSet {
    TraceFn tau1, nu1; // AB, parameter x;  nu1 = u_y
    TraceFn tau2, nu2; // AD, parameter y;  nu2 = -u_x
    TraceFn tau3, nu3; // BC, parameter y;  nu3 = u_x
};

// Immutable solved state: traces plus everything needed to evaluate u anywhere
// in the mixed domain. Safe for concurrent reads.
class Solution {
public:
    Solution(TraceSet traces, ProblemSpec spec);

    double evaluate(Point p) const; // throws OutOfRegion outside the domain
    PointClass classify_point(Point p) const;

    const TraceSet& traces() const { return traces_; }
    const ProblemSpec& spec() const { return spec_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    // Test hook for negative controls: a copy with tau2 scaled.
    Solution with_scaled_tau2(double factor) const;

private:
    TraceSet traces_;
    ProblemSpec spec_;
    std::map<std::string, std::string> metadata_;
};

struct PdeResidual {
    double max_abs = 0.0;
    double l2 = 0.0;
    bool operator==(const PdeResidual&) const = default;
};

struct ResidualReport {
    std::map<std::string, PdeResidual> pde; // per subdomain
    double pde_max = 0.0;
    std::map<std::string, double> nonlocal; // per line
    double nonlocal_max = 0.0;
    double vertex_uA = 0.0;
    double vertex_uB = 0.0;
    double vertex_max = 0.0;
    std::map<std::string, double> jump_u;    // AB, AD, BC
    std::map<std::string, double> jump_grad; // AB, AD, BC
    double jump_u_max = 0.0;
    double jump_grad_max = 0.0;
    std::map<std::string, double> eoc; // filled by convergence studies

    int grid_M = 0;
    int probe_M = 0;
    double quad_tol = 0.0;
    double kernel_series_tol = 0.0;
    int kernel_n_cap = 0;
    std::map<std::string, std::string> conventions;

    // Largest solution-driven residual (everything except the PDE truncation check).
    double residual_max() const;

    std::string to_json_string() const;
    static ResidualReport from_json_string(const std::string& text);
    bool operator==(const ResidualReport&) const = default;
};

// Runs the constructive existence pipeline: characteristic maps, the trace on
// AB from its two-point problem, the coupled Volterra system on AD/BC, then
// the normal-derivative traces from the functional relations.
Solution solve(const ProblemSpec& spec);

// Quantifies how well a Solution satisfies the defining equations: interior
// PDE residuals by finite differences (step 1/probe_M), the nonlocal coupling
// conditions at 101 affix pairs per line, the vertex conditions, and the
// two-sided interface jumps of u and its normal derivative.
ResidualReport verify(const Solution& sol, const ProblemSpec& spec, int probe_M);

struct ConvergenceRow {
    int M = 0;
    double residual_max = 0.0;
    double eoc = 0.0; // log2 ratio vs previous level; NaN marks "not applicable"
    ResidualReport report;
};

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<int>& levels);

} // namespace mixtype
