#include "becsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace becsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// strips an unquoted trailing comment
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

double parse_number(const std::string& tok, int line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw ConfigError("expected a number, got '" + tok + "'", line);
    return v;
}

ConfigFile::Value parse_value(const std::string& raw, int line) {
    ConfigFile::Value v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("missing value", line);
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') throw ConfigError("unterminated string", line);
        v.kind = ConfigFile::Value::Kind::string;
        v.str = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = ConfigFile::Value::Kind::boolean;
        v.boolean = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError("unterminated array", line);
        v.kind = ConfigFile::Value::Kind::array;
        std::string body = s.substr(1, s.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            v.array.push_back(parse_number(item, line));
        }
        return v;
    }
    v.kind = ConfigFile::Value::Kind::number;
    v.number = parse_number(s, line);
    return v;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            cfg.sections_[section];
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + s + "'", line_no);
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (cfg.sections_[section].count(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        cfg.sections_[section][key] = parse_value(s.substr(eq + 1), line_no);
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const ConfigFile::Value* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return nullptr;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

double ConfigFile::number(const std::string& section, const std::string& key,
                          double fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number)
        throw ConfigError("key '" + key + "' must be a number", v->line);
    return v->number;
}

std::string ConfigFile::str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::string)
        throw ConfigError("key '" + key + "' must be a string", v->line);
    return v->str;
}

bool ConfigFile::boolean(const std::string& section, const std::string& key, bool fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::boolean)
        throw ConfigError("key '" + key + "' must be true or false", v->line);
    return v->boolean;
}

std::vector<double> ConfigFile::array(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) return {};
    if (v->kind != Value::Kind::array)
        throw ConfigError("key '" + key + "' must be an array", v->line);
    return v->array;
}

namespace {

int line_of(const ConfigFile& cfg, const std::string& section, const std::string& key) {
    auto sit = cfg.sections().find(section);
    if (sit == cfg.sections().end()) return 0;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? 0 : kit->second.line;
}

InitialSpec parse_initial(const ConfigFile& cfg, const std::string& section) {
    InitialSpec spec;
    const std::string family = cfg.str(section, "family", "constant");
    if (family == "constant") {
        spec = InitialSpec::constant(cfg.number(section, "c", 1.0));
    } else if (family == "linear") {
        spec = InitialSpec::linear(cfg.number(section, "a", 1.0));
    } else if (family == "equilibrium" || family == "scaled_equilibrium") {
        spec = InitialSpec::scaled_equilibrium(cfg.number(section, "a", 1.0),
                                               cfg.number(section, "mu", 0.0));
    } else if (family == "bump") {
        spec = InitialSpec::bump(cfg.number(section, "center", 0.5),
                                 cfg.number(section, "width", 0.25),
                                 cfg.number(section, "height", 1.0));
    } else if (family == "table") {
        const std::string path = cfg.str(section, "path", "");
        if (path.empty())
            throw ConfigError("table family needs a 'path'", line_of(cfg, section, "family"));
        spec = InitialSpec::from_csv(path);
    } else {
        throw ConfigError("unknown initial family '" + family + "'",
                          line_of(cfg, section, "family"));
    }
    spec.kappa = cfg.number(section, "kappa", 0.0);
    spec.p = cfg.number(section, "p", 0.0);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line_of(cfg, section, "family"));
    }
    return spec;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    const ConfigFile cfg = ConfigFile::parse(text);

    static const std::set<std::string> known_sections{"grid",   "initial", "initial_b",
                                                      "solver", "checks",  "sweep"};
    for (const auto& [name, _] : cfg.sections())
        if (!name.empty() && !known_sections.count(name))
            throw ConfigError("unknown section [" + name + "]", 0);

    RunConfig rc;
    rc.grid.epsilon = cfg.number("grid", "epsilon", 1e-3);
    rc.grid.cells = std::size_t(cfg.number("grid", "cells", 400));
    rc.grid.grading = cfg.number("grid", "grading", 1.02);

    rc.initial = parse_initial(cfg, "initial");
    if (cfg.has_section("initial_b")) rc.initial_b = parse_initial(cfg, "initial_b");
    rc.cutoff_adjust = cfg.boolean("initial", "cutoff_adjust", false);

    rc.solver.t_end = cfg.number("solver", "t_end", 1.0);
    rc.solver.cfl = cfg.number("solver", "cfl", 0.5);
    rc.solver.dt_max = cfg.number("solver", "dt_max", 1e-3);
    rc.solver.theta = cfg.number("solver", "theta", 1.0);
    rc.solver.output_every = cfg.number("solver", "output_every", 0.1);
    const std::string mode = cfg.str("solver", "mode", "plain");
    if (mode == "plain")
        rc.solver.mode = SolverConfig::Mode::plain;
    else if (mode == "cutoff")
        rc.solver.mode = SolverConfig::Mode::cutoff;
    else
        throw ConfigError("solver mode must be 'plain' or 'cutoff'", line_of(cfg, "solver", "mode"));
    rc.solver.cutoff_h = cfg.number("solver", "cutoff_h", 0.1);
    try {
        rc.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0);
    }

    rc.tol_scale = cfg.number("checks", "tol_scale", 1.0);
    rc.contraction_p = cfg.number("checks", "contraction_p", 0.0);

    const std::string axis = cfg.str("sweep", "axis", "");
    if (!axis.empty()) {
        if (axis == "epsilon")
            rc.sweep.axis = SweepSpec::Axis::epsilon;
        else if (axis == "kappa")
            rc.sweep.axis = SweepSpec::Axis::kappa;
        else if (axis == "cutoff_h" || axis == "h")
            rc.sweep.axis = SweepSpec::Axis::cutoff_h;
        else if (axis == "cells")
            rc.sweep.axis = SweepSpec::Axis::cells;
        else
            throw ConfigError("unknown sweep axis '" + axis + "'", line_of(cfg, "sweep", "axis"));
        rc.sweep.values = cfg.array("sweep", "values");
    }
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace becsim
