// Command-line front end: solve / verify / convergence over config files.

#include "mixtype/config.hpp"
#include "mixtype/errors.hpp"
#include "mixtype/pipeline.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using namespace mixtype;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_traces_csv(const fs::path& path, const Solution& sol) {
    std::ofstream out(path);
    out << "line,t,tau,nu\n";
    const TraceSet& tr = sol.traces();
    const TraceFn* taus[3] = {&tr.tau1, &tr.tau2, &tr.tau3};
    const TraceFn* nus[3] = {&tr.nu1, &tr.nu2, &tr.nu3};
    for (int line = 0; line < 3; ++line) {
        const int m = taus[line]->grid_m();
        for (int k = 0; k <= m; ++k) {
            const double t = static_cast<double>(k) / m;
            out << (line + 1) << ',' << fmt17(t) << ',' << fmt17(taus[line]->values()[k]) << ','
                << fmt17(nus[line]->values()[k]) << '\n';
        }
    }
}

void write_field_csv(const fs::path& path, const Solution& sol, int resolution) {
    // Bounding box of the mixed domain, padded a little so the lobes are swept.
    const ProblemSpec& sp = sol.spec();
    double g1 = 0.0, g2 = 0.0, g3 = 1.0;
    for (int i = 0; i <= 50; ++i) {
        const double t = i / 50.0;
        g1 = std::max(g1, sp.curve1.gamma(t));
        g2 = std::max(g2, sp.curve2.gamma(t));
        g3 = std::max(g3, sp.curve3.gamma(t));
    }
    std::ofstream out(path);
    out << "subdomain,x,y,u\n";
    for (int j = 0; j < resolution; ++j) {
        for (int i = 0; i < resolution; ++i) {
            const double x = -g2 + (g3 + g2) * i / (resolution - 1);
            const double y = -g1 + (1.0 + g1) * j / (resolution - 1);
            const PointClass c = sol.classify_point({x, y});
            if (c == PointClass::Outside) continue;
            out << to_string(c) << ',' << fmt17(x) << ',' << fmt17(y) << ','
                << fmt17(sol.evaluate({x, y})) << '\n';
        }
    }
}

Solution load_solution(const fs::path& dir, const ProblemSpec& spec) {
    std::ifstream in(dir / "traces.csv");
    if (!in) throw ConfigError("cannot open '" + (dir / "traces.csv").string() + "'");
    std::string header;
    std::getline(in, header);
    if (header != "line,t,tau,nu") throw ConfigError("traces.csv: unexpected header");
    std::vector<double> tau[3], nu[3];
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string a, b, c, d;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ',') ||
            !std::getline(ls, d))
            throw ConfigError("traces.csv: malformed row '" + line + "'");
        const int ln = std::stoi(a);
        if (ln < 1 || ln > 3) throw ConfigError("traces.csv: line index out of range");
        tau[ln - 1].push_back(std::stod(c));
        nu[ln - 1].push_back(std::stod(d));
    }
    TraceSet tr;
    tr.tau1 = TraceFn(tau[0]);
    tr.nu1 = TraceFn(nu[0]);
    tr.tau2 = TraceFn(tau[1]);
    tr.nu2 = TraceFn(nu[1]);
    tr.tau3 = TraceFn(tau[2]);
    tr.nu3 = TraceFn(nu[2]);
    return Solution(std::move(tr), spec);
}

int cmd_solve(const std::string& config_path) {
    const RunConfig rc = parse_run_config(config_path);
    Solution sol = solve(rc.problem);
    ResidualReport rep = verify(sol, rc.problem, rc.probe_M);

    fs::create_directories(rc.output_dir);
    write_field_csv(rc.output_dir / "field.csv", sol, rc.field_resolution);
    write_traces_csv(rc.output_dir / "traces.csv", sol);
    std::ofstream(rc.output_dir / "report.json") << rep.to_json_string() << '\n';

    std::cout << "solve: wrote " << (rc.output_dir / "field.csv").string() << ", traces.csv, report.json\n"
              << "  pde residual max      " << rep.pde_max << '\n'
              << "  nonlocal residual max " << rep.nonlocal_max << '\n'
              << "  vertex residual max   " << rep.vertex_max << '\n'
              << "  interface jump (u)    " << rep.jump_u_max << '\n'
              << "  interface jump (grad) " << rep.jump_grad_max << '\n';
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& solution_dir) {
    const RunConfig rc = parse_run_config(config_path);
    Solution sol = load_solution(solution_dir, rc.problem);
    ResidualReport rep = verify(sol, rc.problem, rc.probe_M);
    std::ofstream(fs::path(solution_dir) / "report.json") << rep.to_json_string() << '\n';
    std::cout << "verify: nonlocal " << rep.nonlocal_max << ", pde " << rep.pde_max << ", jumps "
              << rep.jump_u_max << "/" << rep.jump_grad_max << '\n';
    return 0;
}

int cmd_convergence(const std::string& config_path, const std::string& levels_arg) {
    std::vector<int> levels;
    std::stringstream ss(levels_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            levels.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("--levels: '" + item + "' is not an integer");
        }
    }
    if (levels.size() < 3) throw ConfigError("--levels needs at least 3 comma-separated values");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw ConfigError("--levels must strictly increase");

    const RunConfig rc = parse_run_config(config_path);
    const auto rows = convergence_study(rc.problem, levels);

    fs::create_directories(rc.output_dir);
    std::ofstream out(rc.output_dir / "convergence.csv");
    out << "M,residual_max,eoc\n";
    for (const auto& row : rows) {
        out << row.M << ',' << fmt17(row.residual_max) << ','
            << (std::isnan(row.eoc) ? std::string("na") : fmt17(row.eoc)) << '\n';
    }
    std::cout << "convergence: wrote " << (rc.output_dir / "convergence.csv").string() << '\n';
    for (const auto& row : rows)
        std::cout << "  M=" << row.M << "  residual=" << row.residual_max << "  eoc="
                  << (std::isnan(row.eoc) ? std::string("na") : std::to_string(row.eoc)) << '\n';

    const double final_eoc = rows.back().eoc;
    if (!std::isnan(final_eoc) && final_eoc < 0.5) {
        std::cerr << "convergence regression: final-pair eoc " << final_eoc << " < 0.5\n";
        return 5;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixtype: nonlocal mixed parabolic-hyperbolic solver"};
    app.require_subcommand(1);

    std::string config_path, solution_dir, levels = "64,128,256";

    CLI::App* s = app.add_subcommand("solve", "solve the problem and write field/traces/report");
    s->add_option("config", config_path, "config file")->required();

    CLI::App* v = app.add_subcommand("verify", "verify a stored solution directory");
    v->add_option("config", config_path, "config file")->required();
    v->add_option("solution-dir", solution_dir, "directory holding traces.csv")->required();

    CLI::App* c = app.add_subcommand("convergence", "grid refinement study");
    c->add_option("config", config_path, "config file")->required();
    c->add_option("--levels", levels, "comma-separated grid sizes (at least 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (s->parsed()) return cmd_solve(config_path);
        if (v->parsed()) return cmd_verify(config_path, solution_dir);
        return cmd_convergence(config_path, levels);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const SigmaInvalid& e) {
        std::cerr << "invalid sigma: " << e.what() << '\n';
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    }
}
