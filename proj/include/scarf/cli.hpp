#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scarf::cli {

enum ExitCode : int { kOk = 0, kInvalidArguments = 2, kSolverFailure = 3, kVerificationFailure = 4 };

enum class Format { Csv, Json };

/// Everything a subcommand needs; filled from flags, then the SCARF_CONFIG
/// file, then defaults (in that order of precedence).
struct RunConfig {
    std::string command;
    double v1 = 20.0;
    double v2 = 0.0;
    std::optional<double> v2_from, v2_to;
    std::optional<int> steps;
    int n = 0;
    std::string branch = "plus";
    std::optional<double> emin, emax;
    std::optional<double> grid_l, grid_h;
    double tol = 1e-12;
    int nmax = 8;
    std::string suite = "all";
    Format format = Format::Csv;
    std::string out_path;
    bool numerical = false;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

/// Column-oriented result with a fixed header, rendered as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Header line, snake_case columns, %.12g numbers, LF endings.
std::string to_csv(const Table& t);
std::string to_json(const Table& t, const std::string& command, const std::string& summary);

struct CommandResult {
    Table table;
    std::string summary;
    int exit_code = kOk;
};

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_scan(const RunConfig& cfg);
CommandResult cmd_crossings(const RunConfig& cfg);
CommandResult cmd_wavefunction(const RunConfig& cfg);
CommandResult cmd_poles(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_matrix_demo(const RunConfig& cfg);

/// Full command-line entry point. Machine-readable output goes to --out if
/// given (summary to `out`), otherwise to `out` with the summary on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace scarf::cli
