#include "mixtype/config.hpp"

#include "mixtype/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace mixtype {

namespace {

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

double get_number(const FlatConfig& cfg, const std::string& key, double fallback, bool* found = nullptr) {
    auto it = cfg.find(key);
    if (it == cfg.end()) {
        if (found) *found = false;
        return fallback;
    }
    if (found) *found = true;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + it->second + "'");
    }
}

int get_int(const FlatConfig& cfg, const std::string& key, int fallback) {
    const double v = get_number(cfg, key, fallback);
    const int i = static_cast<int>(v);
    if (v != static_cast<double>(i))
        throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

std::string get_string(const FlatConfig& cfg, const std::string& key, const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

TypeChangeCurve parse_curve(const FlatConfig& cfg, int index) {
    const std::string section = "curve_" + std::to_string(index);
    const std::string kind = get_string(cfg, section + ".kind", "bump");
    if (kind == "bump") {
        const double c = get_number(cfg, section + ".c", 0.25);
        return TypeChangeCurve::bump(index, c);
    }
    if (kind == "table") {
        auto it = cfg.find(section + ".points");
        if (it == cfg.end())
            throw ConfigError("config key '" + section + ".points' required for table curves");
        // Semicolon-separated "t,value" rows.
        std::vector<std::pair<double, double>> rows;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ';')) {
            item = trim(item);
            if (item.empty()) continue;
            const auto comma = item.find(',');
            if (comma == std::string::npos)
                throw ConfigError("config key '" + section + ".points': row '" + item +
                                  "' is not 't,value'");
            try {
                rows.emplace_back(std::stod(item.substr(0, comma)),
                                  std::stod(item.substr(comma + 1)));
            } catch (const std::exception&) {
                throw ConfigError("config key '" + section + ".points': row '" + item +
                                  "' is not numeric");
            }
        }
        try {
            return TypeChangeCurve::table(index, std::move(rows));
        } catch (const CurveInvalid& e) {
            throw ConfigError("config key '" + section + ".points': " + std::string(e.what()));
        }
    }
    throw ConfigError("config key '" + section + ".kind': unknown kind '" + kind + "'");
}

SourceTerm parse_source(const FlatConfig& cfg) {
    const std::string kind = get_string(cfg, "source.kind", "expr");
    if (kind == "expr") {
        const std::string text = get_string(cfg, "source.expr", "0");
        try {
            return SourceTerm::from_expr(Expr::parse(text));
        } catch (const ParseError& e) {
            throw ConfigError("config key 'source.expr': " + std::string(e.what()));
        }
    }
    if (kind == "table") {
        auto it = cfg.find("source.table");
        if (it == cfg.end()) throw ConfigError("config key 'source.table' required");
        std::ifstream in(it->second);
        if (!in) throw ConfigError("config key 'source.table': cannot open '" + it->second + "'");
        std::string line;
        if (!std::getline(in, line) || trim(line) != "x,y,f")
            throw ConfigError("config key 'source.table': first line must be the header 'x,y,f'");
        std::vector<double> xs, ys;
        std::map<std::pair<double, double>, double> cells;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty()) continue;
            std::stringstream ls(line);
            std::string a, b, c;
            if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
                throw ConfigError("config key 'source.table': malformed row '" + line + "'");
            try {
                const double x = std::stod(a), y = std::stod(b), f = std::stod(c);
                xs.push_back(x);
                ys.push_back(y);
                cells[{x, y}] = f;
            } catch (const std::exception&) {
                throw ConfigError("config key 'source.table': non-numeric row '" + line + "'");
            }
        }
        auto uniq = [](std::vector<double>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(xs);
        uniq(ys);
        std::vector<double> grid(xs.size() * ys.size());
        for (std::size_t j = 0; j < ys.size(); ++j)
            for (std::size_t i = 0; i < xs.size(); ++i) {
                auto it2 = cells.find({xs[i], ys[j]});
                if (it2 == cells.end())
                    throw ConfigError("config key 'source.table': grid is not complete");
                grid[j * xs.size() + i] = it2->second;
            }
        return SourceTerm::from_table(std::move(xs), std::move(ys), std::move(grid));
    }
    throw ConfigError("config key 'source.kind': unknown kind '" + kind + "'");
}

} // namespace

FlatConfig read_flat_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    FlatConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

RunConfig parse_run_config(const std::filesystem::path& path) {
    const FlatConfig cfg = read_flat_config(path);
    RunConfig rc;
    rc.problem.sigma.s1 = get_number(cfg, "sigma.s1", 0.0);
    rc.problem.sigma.s2 = get_number(cfg, "sigma.s2", 0.0);
    rc.problem.sigma.s3 = get_number(cfg, "sigma.s3", 0.0);
    rc.problem.curve1 = parse_curve(cfg, 1);
    rc.problem.curve2 = parse_curve(cfg, 2);
    rc.problem.curve3 = parse_curve(cfg, 3);
    rc.problem.source = parse_source(cfg);
    rc.problem.grid_M = get_int(cfg, "grid.M", 256);
    rc.problem.quad_tol = get_number(cfg, "quad.tol", 1e-10);
    rc.problem.kernel.series_tol = get_number(cfg, "kernel.series_tol", 1e-12);
    rc.problem.kernel.n_cap = get_int(cfg, "kernel.n_cap", 32);
    rc.output_dir = get_string(cfg, "output.dir", "out");
    rc.field_resolution = get_int(cfg, "output.field_resolution", 33);
    rc.probe_M = get_int(cfg, "output.probe_M", 64);
    if (rc.field_resolution < 16)
        throw ConfigError("config key 'output.field_resolution': must be at least 16");
    return rc;
}

} // namespace mixtype
