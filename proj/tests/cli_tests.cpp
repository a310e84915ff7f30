// End-to-end tests of the mixtype binary: exit codes, output files,
// determinism. Invoked as: cli_tests <path-to-mixtype> <workdir>.

#include "mixtype/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_binary;
fs::path g_work;

void expect(bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string base_config(const std::string& source_expr, const std::string& sigma2,
                        const fs::path& outdir, int M) {
    std::ostringstream os;
    os << "# test fixture\n"
       << "[sigma]\ns1 = 0.0\ns2 = " << sigma2 << "\ns3 = 0.0\n"
       << "[curve_1]\nkind = \"bump\"\nc = 0.25\n"
       << "[curve_2]\nkind = \"bump\"\nc = 0.25\n"
       << "[curve_3]\nkind = \"bump\"\nc = 0.25\n"
       << "[source]\nkind = \"expr\"\nexpr = \"" << source_expr << "\"\n"
       << "[grid]\nM = " << M << "\n"
       << "[quad]\ntol = 1e-10\n"
       << "[kernel]\nseries_tol = 1e-12\nn_cap = 32\n"
       << "[output]\ndir = \"" << outdir.string() << "\"\nfield_resolution = 21\nprobe_M = 32\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <mixtype-binary> <workdir>\n";
        return 2;
    }
    g_binary = argv[1];
    g_work = argv[2];
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    // Config errors -> exit 2.
    expect(run("solve " + (g_work / "missing.toml").string()) == 2, "missing config exits 2");
    write_file(g_work / "broken.toml", "[sigma\ns1 = 0\n");
    expect(run("solve " + (g_work / "broken.toml").string()) == 2, "malformed section exits 2");
    write_file(g_work / "badexpr.toml",
               base_config("x + * y", "0.0", g_work / "out_badexpr", 64));
    expect(run("solve " + (g_work / "badexpr.toml").string()) == 2,
           "unparseable source expression exits 2");

    // Sigma validation -> exit 3, and no output directory appears.
    const fs::path out3 = g_work / "out_sigma";
    write_file(g_work / "sigma.toml", base_config("0", "1.0", out3, 64));
    expect(run("solve " + (g_work / "sigma.toml").string()) == 3, "sigma2 = 1 exits 3");
    expect(!fs::exists(out3), "rejected run leaves no output files");

    // Numerical failure (non-monotone curve) -> exit 4.
    std::string steep = base_config("0", "0.0", g_work / "out_steep", 64);
    steep.replace(steep.find("c = 0.25"), 8, "c = 1.20");
    write_file(g_work / "steep.toml", steep);
    expect(run("solve " + (g_work / "steep.toml").string()) == 4, "non-monotone curve exits 4");

    // Zero source end to end.
    const fs::path out0 = g_work / "out_zero";
    write_file(g_work / "zero.toml", base_config("0", "0.0", out0, 64));
    expect(run("solve " + (g_work / "zero.toml").string()) == 0, "zero-source solve exits 0");
    expect(fs::exists(out0 / "field.csv") && fs::exists(out0 / "traces.csv") &&
               fs::exists(out0 / "report.json"),
           "solve writes field.csv, traces.csv, report.json");
    {
        std::ifstream field(out0 / "field.csv");
        std::string line;
        std::getline(field, line);
        expect(line == "subdomain,x,y,u", "field.csv header");
        bool small = true;
        int rows = 0;
        while (std::getline(field, line)) {
            const auto last = line.rfind(',');
            small = small && std::abs(std::stod(line.substr(last + 1))) <= 1e-8;
            ++rows;
        }
        expect(small && rows > 200, "zero-source field values below 1e-8");
        const auto rep = mixtype::ResidualReport::from_json_string(slurp(out0 / "report.json"));
        expect(rep.nonlocal_max <= 1e-8 && rep.vertex_max <= 1e-8,
               "zero-source report residuals below 1e-8");
    }

    // Determinism: a rerun reproduces report.json byte for byte.
    const std::string first = slurp(out0 / "report.json");
    expect(run("solve " + (g_work / "zero.toml").string()) == 0, "rerun exits 0");
    expect(slurp(out0 / "report.json") == first, "report.json is bit-identical across reruns");

    // verify command on the stored solution.
    expect(run("verify " + (g_work / "zero.toml").string() + " " + out0.string()) == 0,
           "verify command exits 0");

    // Constant-source solve exercises the full pipeline.
    const fs::path out1 = g_work / "out_one";
    write_file(g_work / "one.toml", base_config("1", "0.0", out1, 64));
    expect(run("solve " + (g_work / "one.toml").string()) == 0, "constant-source solve exits 0");
    {
        const auto rep = mixtype::ResidualReport::from_json_string(slurp(out1 / "report.json"));
        expect(rep.nonlocal_max < 5e-2 && rep.vertex_max <= 1e-10,
               "constant-source report is coherent");
        const std::string round =
            mixtype::ResidualReport::from_json_string(rep.to_json_string()).to_json_string();
        expect(round == rep.to_json_string(), "report.json round-trips");
    }

    // Convergence command: argument validation and the zero-source floor.
    expect(run("convergence " + (g_work / "zero.toml").string() + " --levels 64") == 2,
           "single level exits 2");
    expect(run("convergence " + (g_work / "zero.toml").string() + " --levels 64,48,96") == 2,
           "non-increasing levels exit 2");
    expect(run("convergence " + (g_work / "zero.toml").string() + " --levels 24,32,48") == 0,
           "zero-source convergence exits 0");
    {
        std::ifstream conv(out0 / "convergence.csv");
        std::string line;
        std::getline(conv, line);
        expect(line == "M,residual_max,eoc", "convergence.csv header");
        bool has_na = false;
        while (std::getline(conv, line)) has_na = has_na || line.find("na") != std::string::npos;
        expect(has_na, "zero-source eoc column is marked na");
    }

    // table curve + table source exercise the remaining config kinds.
    {
        std::ostringstream rows;
        for (int i = 0; i <= 16; ++i) {
            const double t = i / 16.0;
            rows << t << "," << 0.2 * t * (1.0 - t) << (i < 16 ? "; " : "");
        }
        std::ostringstream csv;
        csv << "x,y,f\n";
        for (double yy : {-0.6, 0.0, 0.6, 1.2}) {
            for (double xx : {-0.6, 0.0, 0.6, 1.2, 1.8})
                csv << xx << "," << yy << "," << 1.0 << "\n";
        }
        write_file(g_work / "f.csv", csv.str());
        std::ostringstream os;
        os << "[sigma]\ns1 = 0.1\ns2 = 0.0\ns3 = -0.1\n"
           << "[curve_1]\nkind = \"table\"\npoints = \"" << rows.str() << "\"\n"
           << "[curve_2]\nkind = \"bump\"\nc = 0.2\n"
           << "[curve_3]\nkind = \"bump\"\nc = 0.2\n"
           << "[source]\nkind = \"table\"\ntable = \"" << (g_work / "f.csv").string() << "\"\n"
           << "[grid]\nM = 64\n[quad]\ntol = 1e-9\n"
           << "[output]\ndir = \"" << (g_work / "out_tab").string()
           << "\"\nfield_resolution = 16\nprobe_M = 32\n";
        write_file(g_work / "tab.toml", os.str());
        expect(run("solve " + (g_work / "tab.toml").string()) == 0,
               "table curve + table source solve exits 0");
    }

    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures,
                g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
