#include "rebgk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rebgk {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt4(const std::array<double, 4>& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < 4; ++i) {
        s += fmt(a[i]);
        if (i < 3) s += ", ";
    }
    return s + "]";
}

const char* scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::case1: return "case1";
        case ScenarioKind::case2: return "case2";
        case ScenarioKind::custom: return "custom";
    }
    return "case1";
}

ScenarioKind scenario_from(const std::string& s) {
    if (s == "case1") return ScenarioKind::case1;
    if (s == "case2") return ScenarioKind::case2;
    if (s == "custom") return ScenarioKind::custom;
    throw std::invalid_argument("config: unknown scenario '" + s + "'");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok) {
    const std::string t = trim(tok);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw std::invalid_argument("config: bad number '" + t + "'");
    return v;
}

std::array<double, 4> parse_array4(const std::string& tok) {
    const std::string t = trim(tok);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("config: expected [a, b, c, d], got '" + t + "'");
    std::array<double, 4> out{};
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw std::invalid_argument("config: array has more than 4 entries");
        out[i++] = parse_number(item);
    }
    if (i != 4) throw std::invalid_argument("config: array needs exactly 4 entries");
    return out;
}

std::string parse_string(const std::string& tok) {
    const std::string t = trim(tok);
    if (t.size() < 2 || t.front() != '"' || t.back() != '"')
        throw std::invalid_argument("config: expected quoted string, got '" + t + "'");
    return t.substr(1, t.size() - 2);
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[constants]\n";
    os << "c = " << fmt(cfg.constants.c) << "\n";
    os << "h = " << fmt(cfg.constants.h) << "\n";
    os << "k = " << fmt(cfg.constants.k) << "\n\n";

    os << "[grid]\n";
    os << "p_min = " << fmt(cfg.grid.p_min) << "\n";
    os << "p_max = " << fmt(cfg.grid.p_max) << "\n";
    os << "n_nodes = " << cfg.grid.n_nodes << "\n\n";

    os << "[run]\n";
    os << "scenario = \"" << scenario_name(cfg.scenario) << "\"\n";
    os << "dt = " << fmt(cfg.dt) << "\n";
    os << "t_end = " << fmt(cfg.t_end) << "\n";
    os << "stride = " << cfg.stride << "\n";
    os << "output_dir = \"" << cfg.output_dir << "\"\n\n";

    os << "[solver]\n";
    os << "beta_rel_tol = " << fmt(cfg.solver.beta_rel_tol) << "\n";
    os << "xi_threshold_factor = " << fmt(cfg.solver.xi_threshold_factor) << "\n";
    os << "residual_tol = " << fmt(cfg.solver.residual_tol) << "\n";
    os << "dimension = " << cfg.solver.dimension << "\n\n";

    for (std::size_t i = 0; i < 4; ++i) {
        os << "[species." << i + 1 << "]\n";
        os << "mass = " << fmt(cfg.species[i].mass) << "\n";
        os << "degeneracy = " << fmt(cfg.species[i].degeneracy) << "\n";
        os << "rate = " << fmt(cfg.species[i].rate) << "\n\n";
    }

    os << "[case1]\n";
    os << "mu = " << fmt4(cfg.case1.mu0) << "\n";
    os << "U = " << fmt4(cfg.case1.U0) << "\n";
    os << "beta = " << fmt4(cfg.case1.beta0) << "\n\n";

    os << "[case2]\n";
    os << "support_min = " << fmt4(cfg.case2.a) << "\n";
    os << "support_max = " << fmt4(cfg.case2.b) << "\n";
    os << "height = " << fmt4(cfg.case2.height) << "\n";
    os << "apex = " << fmt4(cfg.case2.apex) << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    for (std::size_t i = 0; i < 4; ++i) cfg.species[i].index = static_cast<int>(i) + 1;

    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": bad section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto unknown = [&]() {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + section + "." + key + "'");
        };

        if (section == "constants") {
            if (key == "c") cfg.constants.c = parse_number(val);
            else if (key == "h") cfg.constants.h = parse_number(val);
            else if (key == "k") cfg.constants.k = parse_number(val);
            else unknown();
        } else if (section == "grid") {
            if (key == "p_min") cfg.grid.p_min = parse_number(val);
            else if (key == "p_max") cfg.grid.p_max = parse_number(val);
            else if (key == "n_nodes") cfg.grid.n_nodes = static_cast<std::size_t>(parse_number(val));
            else unknown();
        } else if (section == "run") {
            if (key == "scenario") cfg.scenario = scenario_from(parse_string(val));
            else if (key == "dt") cfg.dt = parse_number(val);
            else if (key == "t_end") cfg.t_end = parse_number(val);
            else if (key == "stride") cfg.stride = static_cast<int>(parse_number(val));
            else if (key == "output_dir") cfg.output_dir = parse_string(val);
            else unknown();
        } else if (section == "solver") {
            if (key == "beta_rel_tol") cfg.solver.beta_rel_tol = parse_number(val);
            else if (key == "xi_threshold_factor") cfg.solver.xi_threshold_factor = parse_number(val);
            else if (key == "residual_tol") cfg.solver.residual_tol = parse_number(val);
            else if (key == "dimension") cfg.solver.dimension = static_cast<int>(parse_number(val));
            else unknown();
        } else if (section.rfind("species.", 0) == 0) {
            const int idx = std::stoi(section.substr(8));
            if (idx < 1 || idx > 4)
                throw std::invalid_argument("config: species index out of range");
            auto& sp = cfg.species[static_cast<std::size_t>(idx - 1)];
            if (key == "mass") sp.mass = parse_number(val);
            else if (key == "degeneracy") sp.degeneracy = parse_number(val);
            else if (key == "rate") sp.rate = parse_number(val);
            else unknown();
        } else if (section == "case1") {
            if (key == "mu") cfg.case1.mu0 = parse_array4(val);
            else if (key == "U") cfg.case1.U0 = parse_array4(val);
            else if (key == "beta") cfg.case1.beta0 = parse_array4(val);
            else unknown();
        } else if (section == "case2") {
            if (key == "support_min") cfg.case2.a = parse_array4(val);
            else if (key == "support_max") cfg.case2.b = parse_array4(val);
            else if (key == "height") cfg.case2.height = parse_array4(val);
            else if (key == "apex") cfg.case2.apex = parse_array4(val);
            else unknown();
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown section '" + section + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << serialize_config(cfg);
}

std::array<double, 22> timeseries_row(const Diagnostics& d) {
    return {d.t,       d.N[0],     d.N[1],     d.N[2],     d.N[3],  d.N13,
            d.N14,     d.N24,      d.E,        d.P,        d.H,     d.dist[0],
            d.dist[1], d.dist[2],  d.dist[3],  d.aux.beta, d.aux.mu[0],
            d.aux.mu[1], d.aux.mu[2], d.aux.mu[3], d.aux.U.t, d.aux.U.x};
}

void emit_timeseries(const std::vector<Diagnostics>& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write timeseries file: " + path);
    out << kTimeseriesHeader << "\r\n";
    for (const auto& d : series) {
        const auto row = timeseries_row(d);
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt(row[i]);
        out << "\r\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_snapshot(const DistributionState& state, const AuxiliaryState& aux,
                   const Mixture& mix, const PhysicalConstants& pc,
                   const MomentumGrid& grid, const std::string& path) {
    const auto J = evaluate_attractor(aux, mix, pc, grid);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write snapshot file: " + path);
    out << kSnapshotHeader << "\r\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        out << fmt(grid.nodes()[j]);
        for (std::size_t i = 0; i < 4; ++i) out << "," << fmt(state.f[i][j]);
        for (std::size_t i = 0; i < 4; ++i) out << "," << fmt(J[i][j]);
        out << "\r\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ParsedCsv parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    ParsedCsv out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        if (header) {
            while (std::getline(ss, tok, ',')) out.columns.push_back(tok);
            header = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, tok, ',')) row.push_back(parse_number(tok));
        if (row.size() != out.columns.size())
            throw std::runtime_error("csv row width mismatch in " + path);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string resolve_output_dir(const std::string& cli_out, const RunConfig& cfg) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("REBGK_OUT"); env && *env) return env;
    return cfg.output_dir;
}

RunResult execute_run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
    validate_config(cfg);
    std::filesystem::create_directories(out_dir);

    const MomentumGrid grid =
        make_grid(cfg.grid.p_min, cfg.grid.p_max, cfg.grid.n_nodes, cfg.species, cfg.constants);
    const DistributionState initial = make_initial_state(cfg, grid);

    SolverContext ctx{cfg.species, cfg.constants, grid, cfg.solver};
    RunOptions opts;
    opts.dt = cfg.dt;
    opts.t_end = cfg.t_end;
    opts.stride = cfg.stride;
    opts.snapshot_times = {0.0, cfg.t_end};

    RunResult result = run(initial, opts, ctx);

    save_config(cfg, out_dir + "/config.toml");
    emit_timeseries(result.series, out_dir + "/timeseries.csv");
    for (const auto& snap : result.snapshots) {
        const SolverInputs in =
            gather_inputs(snap, grid, cfg.species, cfg.constants, cfg.solver.dimension);
        const AuxiliaryState aux = solve_parameters(in, cfg.solver);
        char name[64];
        std::snprintf(name, sizeof name, "/snapshot_t%g.csv", snap.t);
        emit_snapshot(snap, aux, cfg.species, cfg.constants, grid, out_dir + name);
    }

    log << "run: " << (result.completed ? "completed" : "ABORTED") << ", " << result.series.size()
        << " diagnostic rows, " << result.snapshots.size() << " snapshots -> " << out_dir << "\n";
    if (!result.error.empty()) log << "error: " << result.error << "\n";
    for (const auto& w : result.warnings) log << "warning: " << w << "\n";
    if (!result.series.empty()) {
        const auto& last = result.series.back();
        log << "final: t=" << last.t << " beta_tilde=" << last.aux.beta << " H=" << last.H
            << "\n";
    }
    return result;
}

}  // namespace rebgk
