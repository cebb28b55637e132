#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "becsim/initdata.hpp"
#include "becsim/solver.hpp"

namespace becsim {

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(const std::string& msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

/// Minimal TOML reader covering what run configs use: [section] headers,
/// key = value with numbers, quoted strings, booleans and flat arrays of
/// numbers, and # comments. Unknown keys are rejected by the mapping layer.
class ConfigFile {
  public:
    struct Value {
        enum class Kind { number, string, boolean, array };
        Kind kind = Kind::number;
        double number = 0.0;
        std::string str;
        bool boolean = false;
        std::vector<double> array;
        int line = 0;
    };

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    double number(const std::string& section, const std::string& key, double fallback) const;
    std::string str(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> array(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, Value>>& sections() const {
        return sections_;
    }

  private:
    std::map<std::string, std::map<std::string, Value>> sections_;
    const Value* find(const std::string& section, const std::string& key) const;
};

struct GridSpec {
    double epsilon = 1e-3;
    std::size_t cells = 400;
    double grading = 1.02;
};

/// Parameter sweep over one axis; values replace the corresponding field of
/// the base configuration run by run.
struct SweepSpec {
    enum class Axis { none, epsilon, kappa, cutoff_h, cells };
    Axis axis = Axis::none;
    std::vector<double> values;
};

/// Everything one command needs: grid, initial data (plus an optional second
/// initial state for comparisons), solver settings, check settings.
struct RunConfig {
    GridSpec grid;
    InitialSpec initial;
    std::optional<InitialSpec> initial_b;
    bool cutoff_adjust = false;
    SolverConfig solver;
    double tol_scale = 1.0;
    double contraction_p = 0.0;
    SweepSpec sweep;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace becsim
