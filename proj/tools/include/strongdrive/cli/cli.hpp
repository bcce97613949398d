#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"

namespace strongdrive::cli {

enum class Command { simulate, approx, compare, scan_delta, scan_rwa, phase_integral };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view name);

/// Bad flags, malformed values or invalid parameters. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was requested; what() holds the help text. Maps to exit code 0.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fully resolved settings for one CLI invocation.
///
/// The initial state is kept as drive-frame constants (α, β) with |α|² + |β|² = 1 exactly;
/// --psi0/--psi1 and --equal-superposition/--theta are converted on parse.
struct RunConfig {
    Command command = Command::simulate;
    DriveParams params{0.1, 1.0, 1.0};
    cplx alpha{0.70710678118654752440, 0.0};
    cplx beta{0.70710678118654752440, 0.0};
    double t_max = 10.0;
    std::size_t samples = 0;  ///< resolved to ≥ 32 per drive period when left at 0
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double quad_tol = 1e-10;
    int order = 1;
    int sign = 1;
    std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
    std::vector<double> omegas{0.5, 1.0, 1.5, 2.0};
    std::string out;  ///< "-" writes CSV to stdout; empty resolves to "<command>.csv"

    /// Lab-frame initial state ψ(0) = W·(α, β).
    Vec2 initial_state() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses "re+imi" style complex literals: "1", "-0.5", "0.6+0.8i", "2e-3-i", "0.25i".
cplx parse_complex(std::string_view text);
/// Inverse of parse_complex with 17 significant digits.
std::string format_complex(cplx z);
/// Shortest-exact formatting with 17 significant digits, '.' separator; NaN as "nan".
std::string format_double(double x);

/// argv tokens after the program name, e.g. {"simulate", "--g", "1"}.
/// Precedence: built-in defaults < --config file < explicit flags.
RunConfig parse_args(std::span<const std::string> args);

/// Parses the flat key/value config format (a JSON object, keys are flag names without the
/// leading dashes) on top of `base`.
RunConfig apply_config_text(const RunConfig& base, std::string_view text);

/// Serializes every field of `cfg` in the config file format.
std::string to_config_text(const RunConfig& cfg);

/// Executes the command, writes the CSV and prints a one-line summary to `out`.
/// Returns 0 on success, 1 on numerical or I/O failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point used by main(): parse + run with exit codes {0, 1, 2}.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Scan worker count: hardware concurrency, capped by STRONGDRIVE_THREADS when set.
unsigned worker_threads();

} // namespace strongdrive::cli
