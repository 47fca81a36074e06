#pragma once

// Experiment orchestration behind the gutkin-lab command line.

#include "gutkin/json_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gutkin {

enum class Command { SolveDelta, Defect, Lemmas, Orbit, Scaling, Symplectic, Geodesic, Characterize };
enum class OutputFormat { Json, Csv };

const char* to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);

struct ExperimentConfig {
    Command command = Command::SolveDelta;
    /// Body or curve spec as given (inline JSON or a file path); resolved
    /// JSON lives in body/curve/family.
    std::string body_source;
    std::string curve_source;
    Json body;
    Json curve;
    /// characterize: list of body specs
    Json family = Json::array();

    std::vector<double> deltas;  // one value or a grid, radians
    int n = 0;                   // solve-delta, scaling
    int samples = 10000;
    std::uint64_t seed = 0;
    int grid = 64;                     // lemmas
    int steps = 50;                    // orbit
    std::vector<double> eps;           // scaling
    std::vector<double> start;         // orbit foot / geodesic start
    std::vector<double> direction;     // orbit tangent / geodesic direction
    double length = 0.0;               // geodesic; 0 picks one circuit estimate
    double step = 0.0;                 // geodesic; 0 picks 1e-3 × diameter

    std::string output;  // empty: stdout
    OutputFormat format = OutputFormat::Json;
};

/// Reads a JSON config file with the same field names as the long options.
/// Errors name the offending field and its line.
ExperimentConfig load_config(const std::string& path);

/// Checks the invariants (δ in (0, π/2), samples ≥ 1, required inputs
/// present) and resolves body/curve sources. Throws ConfigError.
void validate(ExperimentConfig& config);

Json config_to_json(const ExperimentConfig& config);

struct RunResult {
    int exit_code = 0;
    std::string report;
};

/// Runs a validated config and renders the report text; exit code 2 when an
/// assert-mode check fails.
RunResult execute(const ExperimentConfig& config);

/// Validates, executes and writes the report. Exit 0 / 2 as in execute,
/// 1 on configuration or IO errors (message on `err`).
int run(ExperimentConfig config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gutkin
