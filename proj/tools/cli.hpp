#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bogodense/params.hpp"

namespace bogodense::cli {

enum class Command { None, Help, Ground, Modes, Dynamics, Bdg, Protocol, Figure1 };
enum class Format { Csv, Json };
enum class DynamicsMode { Exact, Analytic, Both };

struct RunConfig {
    Command command = Command::None;
    std::string help_text;  // filled for Command::Help

    PhysicalParams physical;
    std::size_t grid_points = 4000;
    double r_max = 0.0;  // 0: automatic
    std::string output;  // empty: stdout
    std::string summary_path;
    Format format = Format::Csv;
    bool si = false;

    // ground
    bool with_tf = false;
    // dynamics
    std::size_t m_total = 0;  // 0: round(nbar)
    double t_max = 0.0;       // 0: one period 2 pi/omega'
    std::size_t steps = 400;
    DynamicsMode dyn_mode = DynamicsMode::Both;
    // bdg
    std::size_t num_modes = 8;
    std::string dump_modes;
    // protocol
    double protocol_n0 = 100.0;
    std::size_t cycles = 200;
    std::string init;  // empty: gaussian:n0,sqrt(n0)
    std::size_t m_max = 0;
};

/// Applies `key = value` lines (# comments, blank lines ignored). Keys are the
/// long flag names without dashes; '_' and '-' are interchangeable.
/// Throws Error(Parse) naming the key and line for unknown keys or bad values.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Defaults, then the --config file (if any), then flags. Throws Error(Parse).
RunConfig parse_config(const std::vector<std::string>& args);

/// Keys accepted in config files.
std::vector<std::string> config_keys();

/// Executes cfg.command, writing the primary output to `out` unless
/// cfg.output names a file.
void run(const RunConfig& cfg, std::ostream& out);

/// "%.12g"
std::string format_number(double x);

/// Exit status used for an error category.
int exit_code_for(std::string_view category) noexcept;

}  // namespace bogodense::cli
