#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace su11::cli {

enum class Command { Verify, State, Spectrum, Wavefunction, Evolve };
enum class Format { Json, Csv };

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInvalidArguments = 2,
  kDomainError = 3,
};

struct RunConfig {
  Command command = Command::Verify;
  double k = 1.0;
  int n = 0;
  double tau = 0.5;
  double phi = 0.0;
  double omega = 1.0;
  double chi = 0.0;
  double pump_phase = 0.0;
  int m = 0;
  double t = 1.0;
  int dim = 128;
  double tol = 1e-10;
  int n_max = 10;
  int radial_points = 32;
  int angular_points = 8;
  int steps = 10;
  std::optional<double> r_max;
  Format format = Format::Json;
  std::string output;

  // Which flags were given explicitly.
  bool tau_given = false;
  bool phi_given = false;
  bool omega_given = false;
  bool chi_given = false;
  bool pump_phase_given = false;
  bool dim_given = false;
  bool tol_given = false;
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const RunConfig& cfg);

struct CommandOutput {
  int exit_code = kSuccess;
  std::string body;  // the serialized result
};

/// Runs one subcommand; exceptions propagate. Verification progress lines go
/// to `log` when non-null.
CommandOutput execute(const RunConfig& cfg, std::ostream* log = nullptr);

/// Full entry point: parses argv, validates, executes, writes the body to
/// stdout or --output, and maps errors onto exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

/// 17 significant digits, '.' separator, always with a '.' or exponent.
std::string format_double(double x);

}  // namespace su11::cli
