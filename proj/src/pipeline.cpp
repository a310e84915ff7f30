#include "mixtype/pipeline.hpp"

#include "mixtype/errors.hpp"
#include "mixtype/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixtype {

using nlohmann::json;

void ProblemSpec::validate() const {
    sigma.validate();
    if (curve1.index() != 1 || curve2.index() != 2 || curve3.index() != 3)
        throw CurveInvalid("curves must carry indices 1, 2, 3");
    curve1.validate();
    curve2.validate();
    curve3.validate();
    if (grid_M < 16) throw SolverError("grid.M must be at least 16");
    if (!(quad_tol > 0.0)) throw SolverError("quad.tol must be positive");
    kernel.validate();
}

Solution::Solution(TraceSet traces, ProblemSpec spec)
    : traces_(std::move(traces)), spec_(std::move(spec)) {
    metadata_["nu_direction.AB"] = "+y";
    metadata_["nu_direction.AD"] = "-x";
    metadata_["nu_direction.BC"] = "+x";
    // Signs of the nu / double-integral terms of the D'Alembert forms in the
    // three lobes, resolved so that 4 u_xi_eta = f and the Cauchy data come
    // back out of each representation.
    metadata_["dalembert_nu_sign"] = "-,+,-";
    metadata_["dalembert_f_sign"] = "-,+,+";
    metadata_["grid_M"] = std::to_string(spec_.grid_M);
}

PointClass Solution::classify_point(Point p) const {
    return classify(p, spec_.curve1, spec_.curve2, spec_.curve3);
}

double Solution::evaluate(Point p) const {
    switch (classify_point(p)) {
    case PointClass::Omega0:
        return heat_u(p, traces_.tau1, traces_.tau2, traces_.tau3, spec_.source, spec_.kernel,
                      spec_.quad_tol);
    case PointClass::Omega1:
        return dalembert_u(1, traces_.tau1, traces_.nu1, spec_.source, to_char(p), spec_.quad_tol);
    case PointClass::Omega2:
        return dalembert_u(2, traces_.tau2, traces_.nu2, spec_.source, to_char(p), spec_.quad_tol);
    case PointClass::Omega3:
        return dalembert_u(3, traces_.tau3, traces_.nu3, spec_.source, to_char(p), spec_.quad_tol);
    case PointClass::OnInterface: {
        const double e = 1e-12;
        if (std::abs(p.y) <= e) return traces_.tau1.value(p.x);
        if (std::abs(p.x) <= e) return traces_.tau2.value(p.y);
        return traces_.tau3.value(p.y);
    }
    default:
        throw OutOfRegion("evaluate: point lies outside the mixed domain");
    }
}

Solution Solution::with_scaled_tau2(double factor) const {
    TraceSet t = traces_;
    t.tau2 = t.tau2.scaled(factor);
    return Solution(std::move(t), spec_);
}

Solution solve(const ProblemSpec& spec) {
    spec.validate();
    const int M = spec.grid_M;
    const double qtol = spec.quad_tol;

    const CharMaps maps1 = build_char_maps(spec.curve1);
    const CharMaps maps2 = build_char_maps(spec.curve2);
    const CharMaps maps3 = build_char_maps(spec.curve3);

    auto A1 = [&](double t) { return compute_A(1, t, spec.sigma.s1, spec.source, maps1, qtol); };
    auto A2 = [&](double t) { return compute_A(2, t, spec.sigma.s2, spec.source, maps2, qtol); };
    auto A3 = [&](double t) { return compute_A(3, t, spec.sigma.s3, spec.source, maps3, qtol); };

    TraceFn tau1 = solve_tau1(spec.sigma, spec.source, A1, M, qtol);

    std::vector<double> e1(M + 1), e2(M + 1);
    parallel_for(static_cast<std::size_t>(M) + 1, [&](std::size_t k) {
        const double y = static_cast<double>(k) / M;
        e1[k] = build_E(y, 1, spec.sigma, tau1, spec.source, A2, A3, spec.kernel, qtol);
        e2[k] = build_E(y, 2, spec.sigma, tau1, spec.source, A2, A3, spec.kernel, qtol);
    });
    auto E1 = [&](double y) { return e1[static_cast<std::size_t>(std::lround(y * M))]; };
    auto E2 = [&](double y) { return e2[static_cast<std::size_t>(std::lround(y * M))]; };

    VolterraGrid vg = solve_volterra(spec.sigma, E1, E2, spec.kernel, M);

    // Anchors: continuity with tau1 at the shared vertices A and B, where the
    // vertex conditions force the traces to vanish.
    TraceFn tau2 = integrate_deriv(TraceFn(vg.tau2p_deriv), 0.0);
    TraceFn tau3 = integrate_deriv(TraceFn(vg.tau3m_deriv), 0.0);

    TraceSet traces;
    traces.tau1 = tau1;
    traces.nu1 = recover_nu(1, tau1, A1, spec.sigma);
    traces.tau2 = tau2;
    traces.nu2 = recover_nu(2, tau2, A2, spec.sigma);
    traces.tau3 = tau3;
    traces.nu3 = recover_nu(3, tau3, A3, spec.sigma);
    return Solution(std::move(traces), spec);
}

namespace {

struct MaxL2 {
    double mx = 0.0;
    double sumsq = 0.0;
    int n = 0;

    void add(double r) {
        mx = std::max(mx, std::abs(r));
        sumsq += r * r;
        ++n;
    }

    PdeResidual done() const {
        PdeResidual p;
        p.max_abs = mx;
        p.l2 = n > 0 ? std::sqrt(sumsq / n) : 0.0;
        return p;
    }
};

// Fixed interior probe stations; the FD step shrinks with probe_M instead,
// which keeps the cost flat while the residual estimate converges.
std::vector<double> stations(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace

ResidualReport verify(const Solution& sol, const ProblemSpec& spec, int probe_M) {
    if (probe_M < 8) throw SolverError("verify requires probe_M >= 8");
    const double h = 1.0 / probe_M;
    const double qtol = spec.quad_tol;
    const TraceSet& tr = sol.traces();

    ResidualReport rep;
    rep.grid_M = spec.grid_M;
    rep.probe_M = probe_M;
    rep.quad_tol = spec.quad_tol;
    rep.kernel_series_tol = spec.kernel.series_tol;
    rep.kernel_n_cap = spec.kernel.n_cap;
    rep.conventions = sol.metadata();

    // --- Interior PDE residual, parabolic: u_xx - u_y - f on a fixed station
    // grid. The step shrinks slower than 1/probe_M so that the second
    // difference stays truncation-dominated over the layer-quadrature noise of
    // heat_u (which the division by h^2 amplifies).
    {
        const double hp = std::min(0.07, std::pow(static_cast<double>(probe_M), -0.75));
        MaxL2 acc;
        const auto xs = stations(0.15, 0.85, 9);
        const auto ys = stations(0.15, 0.85, 9);
        std::vector<double> rs(xs.size() * ys.size());
        parallel_for(rs.size(), [&](std::size_t idx) {
            const double x = xs[idx % xs.size()];
            const double y = ys[idx / xs.size()];
            auto u = [&](double px, double py) {
                return heat_u({px, py}, tr.tau1, tr.tau2, tr.tau3, spec.source, spec.kernel, qtol);
            };
            const double uxx = (u(x - hp, y) - 2.0 * u(x, y) + u(x + hp, y)) / (hp * hp);
            const double uy = (u(x, y + hp) - u(x, y - hp)) / (2.0 * hp);
            rs[idx] = uxx - uy - spec.source(x, y);
        });
        for (double r : rs) acc.add(r);
        rep.pde["Omega0"] = acc.done();
    }

    // --- Interior PDE residual, hyperbolic lobes: 4 u_xi_eta - f by the mixed
    // second difference aligned with the characteristics.
    for (int region = 1; region <= 3; ++region) {
        const RegionFrame fr(region);
        const TraceFn& tau = region == 1 ? tr.tau1 : (region == 2 ? tr.tau2 : tr.tau3);
        const TraceFn& nu = region == 1 ? tr.nu1 : (region == 2 ? tr.nu2 : tr.nu3);
        auto v = [&](double p, double q) {
            return dalembert_u(region, tau, nu, spec.source, fr.char_from_pq(p, q), qtol);
        };
        MaxL2 acc;
        const int np = 7;
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < np; ++i) {
            for (int j = 0; j < np; ++j) {
                // Stations inside the characteristic triangle with a 2h margin.
                const double lo = 2.0 * h, hi = 1.0 - 2.0 * h;
                double a = lo + (hi - lo) * i / (np - 1);
                double b = a + 2.0 * h + (hi - (a + 2.0 * h)) * j / (np - 1);
                if (b > hi || b - a < 2.0 * h) continue;
                const double p = region == 3 ? b : a;
                const double q = region == 3 ? a : b;
                pts.emplace_back(p, q);
            }
        }
        std::vector<double> rs(pts.size());
        parallel_for(pts.size(), [&](std::size_t idx) {
            auto [p, q] = pts[idx];
            const double mixed = (v(p + h, q + h) - v(p + h, q - h) - v(p - h, q + h) +
                                  v(p - h, q - h)) /
                                 (4.0 * h * h);
            const Point xy = fr.point_from_pq(p, q);
            rs[idx] = 4.0 * fr.eta_sign() * mixed - spec.source(xy);
        });
        for (double r : rs) acc.add(r);
        rep.pde["Omega" + std::to_string(region)] = acc.done();
    }
    for (const auto& [name, pr] : rep.pde) rep.pde_max = std::max(rep.pde_max, pr.max_abs);

    // --- Nonlocal coupling residuals at 101 affix pairs per line.
    {
        for (int line = 1; line <= 3; ++line) {
            const TypeChangeCurve& curve =
                line == 1 ? spec.curve1 : (line == 2 ? spec.curve2 : spec.curve3);
            const TraceFn& tau = line == 1 ? tr.tau1 : (line == 2 ? tr.tau2 : tr.tau3);
            const TraceFn& nu = line == 1 ? tr.nu1 : (line == 2 ? tr.nu2 : tr.nu3);
            const double sg = line == 1 ? spec.sigma.s1 : (line == 2 ? spec.sigma.s2 : spec.sigma.s3);
            std::vector<double> rs(101);
            parallel_for(rs.size(), [&](std::size_t j) {
                const double t = static_cast<double>(j) / 100.0;
                const Point th = affix(line, t, false, curve);
                const Point ths = affix(line, t, true, curve);
                auto g = dalembert_grad(line, tau, nu, spec.source, to_char(th), qtol);
                auto gs = dalembert_grad(line, tau, nu, spec.source, to_char(ths), qtol);
                const double dminus = 2.0 * g.second;   // u_x - u_y at the affix
                const double dplus_s = 2.0 * gs.first;  // u_x + u_y at the starred affix
                const double dplus = 2.0 * g.first;
                const double dminus_s = 2.0 * gs.second;
                rs[j] = line == 3 ? dplus - sg * dminus_s : dminus - sg * dplus_s;
            });
            double mx = 0.0;
            for (double r : rs) mx = std::max(mx, std::abs(r));
            rep.nonlocal["line" + std::to_string(line)] = mx;
            rep.nonlocal_max = std::max(rep.nonlocal_max, mx);
        }
    }

    // --- Vertex conditions u(A) = u(B) = 0.
    rep.vertex_uA = std::abs(tr.tau1.value(0.0));
    rep.vertex_uB = std::abs(tr.tau1.value(1.0));
    rep.vertex_max = std::max(rep.vertex_uA, rep.vertex_uB);

    // --- Interface jumps by linearly extrapolated two-sided limits (value) and
    // one-sided difference quotients (normal derivative). Stations keep clear
    // of A and B: generic data violates the corner compatibility conditions
    // there, so the exact solution carries weak corner layers of width ~sqrt(y)
    // that a jump metric must not count against the interface matching.
    {
        const double d = h;
        const auto ts = stations(0.25, 0.75, 11);
        auto par = [&](double x, double y) {
            return heat_u({x, y}, tr.tau1, tr.tau2, tr.tau3, spec.source, spec.kernel, qtol);
        };
        auto hyp = [&](int region, double x, double y) {
            const TraceFn& tau = region == 1 ? tr.tau1 : (region == 2 ? tr.tau2 : tr.tau3);
            const TraceFn& nu = region == 1 ? tr.nu1 : (region == 2 ? tr.nu2 : tr.nu3);
            return dalembert_u(region, tau, nu, spec.source, to_char({x, y}), qtol);
        };
        struct Line {
            const char* name;
            int region;
        };
        const Line lines[3] = {{"AB", 1}, {"AD", 2}, {"BC", 3}};
        for (const Line& ln : lines) {
            std::vector<double> ju(ts.size()), jg(ts.size());
            parallel_for(ts.size(), [&](std::size_t j) {
                const double t = ts[j];
                double up1, up2, uh1, uh2;
                if (ln.region == 1) {
                    up1 = par(t, d);
                    up2 = par(t, 2.0 * d);
                    uh1 = hyp(1, t, -d);
                    uh2 = hyp(1, t, -2.0 * d);
                } else if (ln.region == 2) {
                    up1 = par(d, t);
                    up2 = par(2.0 * d, t);
                    uh1 = hyp(2, -d, t);
                    uh2 = hyp(2, -2.0 * d, t);
                } else {
                    up1 = par(1.0 - d, t);
                    up2 = par(1.0 - 2.0 * d, t);
                    uh1 = hyp(3, 1.0 + d, t);
                    uh2 = hyp(3, 1.0 + 2.0 * d, t);
                }
                ju[j] = std::abs((2.0 * up1 - up2) - (2.0 * uh1 - uh2));
                // Both quotients approximate the same normal derivative on the line.
                jg[j] = std::abs((up2 - up1) / d + (uh2 - uh1) / d);
            });
            double mu = 0.0, mg = 0.0;
            for (std::size_t j = 0; j < ts.size(); ++j) {
                mu = std::max(mu, ju[j]);
                mg = std::max(mg, jg[j]);
            }
            rep.jump_u[ln.name] = mu;
            rep.jump_grad[ln.name] = mg;
            rep.jump_u_max = std::max(rep.jump_u_max, mu);
            rep.jump_grad_max = std::max(rep.jump_grad_max, mg);
        }
    }
    return rep;
}

double ResidualReport::residual_max() const {
    return std::max({nonlocal_max, vertex_max, jump_u_max, jump_grad_max});
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<int>& levels) {
    if (levels.size() < 3) throw SolverError("convergence study needs at least 3 levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1])
            throw SolverError("convergence study levels must strictly increase");

    std::vector<ConvergenceRow> rows;
    const double floor_res = 1e-12;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        ProblemSpec lvl = spec;
        lvl.grid_M = levels[i];
        Solution sol = solve(lvl);
        ConvergenceRow row;
        row.M = levels[i];
        row.report = verify(sol, lvl, levels[i]);
        row.residual_max = std::max(row.report.residual_max(), row.report.pde_max);
        row.eoc = std::numeric_limits<double>::quiet_NaN();
        if (i > 0) {
            const double prev = rows[i - 1].residual_max;
            if (prev > floor_res && row.residual_max > floor_res)
                row.eoc = std::log2(prev / row.residual_max) /
                          std::log2(static_cast<double>(levels[i]) / levels[i - 1]);
        }
        rows.push_back(std::move(row));
    }
    // Record per-family observed orders on the final pair in the last report.
    if (rows.size() >= 2) {
        auto& last = rows.back();
        const ResidualReport& a = rows[rows.size() - 2].report;
        const ResidualReport& b = last.report;
        const double lr = std::log2(static_cast<double>(b.grid_M) / a.grid_M);
        auto order = [&](double ra, double rb) {
            if (ra <= floor_res || rb <= floor_res) return std::numeric_limits<double>::quiet_NaN();
            return std::log2(ra / rb) / lr;
        };
        last.report.eoc["pde"] = order(a.pde_max, b.pde_max);
        last.report.eoc["nonlocal"] = order(a.nonlocal_max, b.nonlocal_max);
        last.report.eoc["vertex"] = order(a.vertex_max, b.vertex_max);
        last.report.eoc["jump_u"] = order(a.jump_u_max, b.jump_u_max);
        last.report.eoc["jump_grad"] = order(a.jump_grad_max, b.jump_grad_max);
        last.report.eoc["total"] = order(std::max(a.residual_max(), a.pde_max),
                                         std::max(b.residual_max(), b.pde_max));
    }
    return rows;
}

namespace {

json pde_to_json(const PdeResidual& p) { return json{{"max", p.max_abs}, {"l2", p.l2}}; }

} // namespace

std::string ResidualReport::to_json_string() const {
    json j;
    json jp;
    for (const auto& [k, v] : pde) jp[k] = pde_to_json(v);
    j["pde_residual"] = jp;
    j["pde_residual_max"] = pde_max;
    j["nonlocal_residual"] = nonlocal;
    j["nonlocal_residual_max"] = nonlocal_max;
    j["vertex_residual"] = json{{"uA", vertex_uA}, {"uB", vertex_uB}, {"max", vertex_max}};
    j["interface_jump"] = json{{"u", jump_u}, {"grad", jump_grad}};
    j["interface_jump_u_max"] = jump_u_max;
    j["interface_jump_grad_max"] = jump_grad_max;
    json je = json::object();
    for (const auto& [k, v] : eoc) {
        if (std::isnan(v))
            je[k] = "na";
        else
            je[k] = v;
    }
    j["eoc"] = je;
    j["metadata"] = json{{"grid_M", grid_M},
                         {"probe_M", probe_M},
                         {"quad_tol", quad_tol},
                         {"kernel", json{{"series_tol", kernel_series_tol}, {"n_cap", kernel_n_cap}}},
                         {"conventions", conventions}};
    return j.dump(2);
}

ResidualReport ResidualReport::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    ResidualReport r;
    for (const auto& [k, v] : j.at("pde_residual").items()) {
        PdeResidual p;
        p.max_abs = v.at("max").get<double>();
        p.l2 = v.at("l2").get<double>();
        r.pde[k] = p;
    }
    r.pde_max = j.at("pde_residual_max").get<double>();
    r.nonlocal = j.at("nonlocal_residual").get<std::map<std::string, double>>();
    r.nonlocal_max = j.at("nonlocal_residual_max").get<double>();
    r.vertex_uA = j.at("vertex_residual").at("uA").get<double>();
    r.vertex_uB = j.at("vertex_residual").at("uB").get<double>();
    r.vertex_max = j.at("vertex_residual").at("max").get<double>();
    r.jump_u = j.at("interface_jump").at("u").get<std::map<std::string, double>>();
    r.jump_grad = j.at("interface_jump").at("grad").get<std::map<std::string, double>>();
    r.jump_u_max = j.at("interface_jump_u_max").get<double>();
    r.jump_grad_max = j.at("interface_jump_grad_max").get<double>();
    for (const auto& [k, v] : j.at("eoc").items()) {
        r.eoc[k] = v.is_string() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    }
    const json& m = j.at("metadata");
    r.grid_M = m.at("grid_M").get<int>();
    r.probe_M = m.at("probe_M").get<int>();
    r.quad_tol = m.at("quad_tol").get<double>();
    r.kernel_series_tol = m.at("kernel").at("series_tol").get<double>();
    r.kernel_n_cap = m.at("kernel").at("n_cap").get<int>();
    r.conventions = m.at("conventions").get<std::map<std::string, std::string>>();
    return r;
}

} // namespace mixtype
