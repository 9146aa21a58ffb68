#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace su11 {

enum class CheckStatus { Pass, Warn, Fail };

const char* to_string(CheckStatus s) noexcept;

struct CheckResult {
  int criterion = 0;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  /// Residual depends on the window size (downgraded to Warn on small dims).
  bool truncation_sensitive = false;
  std::string detail;
};

/// Pointwise comparison of the printed closed-form wavefunction against the
/// series route.
struct DiscrepancyReport {
  std::string form;
  int points_compared = 0;
  int points_outside_tolerance = 0;
  int singular_points = 0;
  double max_abs_difference = 0.0;
  std::string worst_point;
  /// Same grid, re-derived closed form against the series.
  double corrected_max_abs_difference = 0.0;
};

struct VerifyConfig {
  static constexpr int default_dim = 128;

  int dim = default_dim;
  /// Replaces every pinned residual tolerance when set.
  std::optional<double> tol_override;

  /// Window smaller than the default: truncation-sensitive failures become
  /// warnings.
  bool reduced_window() const noexcept { return dim < default_dim; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<DiscrepancyReport> discrepancies;
  double seconds = 0.0;

  bool passed() const noexcept;
  /// All checks of one criterion passed (warnings count as not passed).
  bool criterion_passed(int criterion) const noexcept;
};

using CheckCallback = std::function<void(const CheckResult&)>;

/// Runs the checks of criteria 1..10 over their parameter grids. The
/// callback, if any, sees each check as soon as it is decided.
VerifyReport run_verification(const VerifyConfig& cfg,
                              const CheckCallback& on_check = {});

/// Only the checks of the listed criteria.
VerifyReport run_verification(const VerifyConfig& cfg,
                              const std::vector<int>& criteria,
                              const CheckCallback& on_check = {});

}  // namespace su11
