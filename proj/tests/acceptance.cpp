// One PASS/FAIL line per acceptance criterion.

#include "su11/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

const char* const kTitles[] = {
    "",
    "algebra closure and Casimir on truncated representations",
    "displacement routes agree, unitary, invertible",
    "number coherent states: series vs exponential",
    "L operators: closed forms vs conjugation, ladder action",
    "Gram identity and partial completeness",
    "tilted Hamiltonian diagonal, spectrum (n+k) Omega",
    "time evolution is a pure phase",
    "amplifier spectrum and quantum-number mapping",
    "wavefunctions: normalization and closed forms",
    "two-mode realization: finite-difference order",
    "verify command: exit code 0 within 60 s",
};

void line(int criterion, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s%s%s\n", criterion, ok ? "PASS" : "FAIL", kTitles[criterion],
              detail.empty() ? "" : "  | ", detail.c_str());
}

}  // namespace

int main() {
  const su11::VerifyReport rep = su11::run_verification(su11::VerifyConfig{});
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    const bool ok = rep.criterion_passed(c);
    all = all && ok;
    std::string detail;
    double worst_ratio = -1.0;
    for (const auto& chk : rep.checks) {
      if (chk.criterion != c || chk.status == su11::CheckStatus::Pass) continue;
      const double ratio = chk.tolerance > 0 ? chk.residual / chk.tolerance : chk.residual;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s residual %.3e > tol %.1e", chk.name.c_str(),
                      chk.residual, chk.tolerance);
        detail = buf;
      }
    }
    line(c, ok, detail);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const int raw = std::system(SU11_CLI_PATH " verify > /dev/null 2>&1");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  const bool ok11 = code == 0 && secs < 60.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "exit %d after %.1f s", code, secs);
  line(11, ok11, buf);
  all = all && ok11;

  return all ? 0 : 1;
}
