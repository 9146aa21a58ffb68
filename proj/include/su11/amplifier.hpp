#pragma once

#include "su11/algebra.hpp"
#include "su11/displacement.hpp"
#include "su11/dynamics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace su11 {

/// H = omega (a^dag a + b^dag b) + chi (a^dag b^dag e^{-i Phi} + a b e^{i Phi})
///   = 2 omega K0 + chi (K+ e^{-i Phi} + K- e^{i Phi}) - omega.
struct AmplifierSpec {
  double omega = 1.0;
  double chi = 0.0;
  double pump_phase = 0.0;

  /// The su(1,1) part (f = 2 omega, gamma = chi); the constant -omega is
  /// dropped.
  Su11Hamiltonian as_su11() const noexcept {
    return Su11Hamiltonian{2.0 * omega, chi, pump_phase};
  }
};

/// Labels of a two-dimensional oscillator state |N, m>: N = n_a + n_b,
/// m = n_a - n_b. In the su(1,1) picture k = (|m|+1)/2 and n = n_r.
class TwoModeQuantumNumbers {
 public:
  /// Requires N >= 0, |m| <= N and N - m even.
  TwoModeQuantumNumbers(int total, int m);

  static TwoModeQuantumNumbers from_radial(int n_r, int m);

  int total() const noexcept { return total_; }
  int m() const noexcept { return m_; }
  int radial() const noexcept { return (total_ - abs_m()) / 2; }
  int abs_m() const noexcept { return m_ < 0 ? -m_ : m_; }
  double l() const noexcept { return m_ + 0.5; }
  BargmannIndex k() const { return BargmannIndex(0.5 * (abs_m() + 1)); }
  /// (N+1)/2, which equals k + n_r.
  double kzero_eigenvalue() const noexcept { return 0.5 * (total_ + 1); }

 private:
  int total_;
  int m_;
};

/// Generalized Laguerre polynomial L_n^alpha(x) by the upward recurrence
/// (j+1) L_{j+1} = (2j+1+alpha-x) L_j - (j+alpha) L_{j-1}.
template <typename T>
T laguerre(int n, double alpha, T x) {
  if (n <= 0) return T(1.0);
  T prev(1.0);
  T cur = T(1.0 + alpha) - x;
  for (int j = 1; j < n; ++j) {
    const T next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) /
                   static_cast<double>(j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Two-dimensional oscillator eigenfunction in polar coordinates,
/// (1/sqrt(2 pi)) e^{i m theta} (-1)^{n_r} sqrt(2 n_r!/(n_r+|m|)!)
///   r^{|m|} L_{n_r}^{|m|}(r^2) e^{-r^2/2}.
cplx ho_eigenfunction(const TwoModeQuantumNumbers& q, double r, double angle);

/// sigma = (1 - |zeta|^2) / ((1 - zeta)(-zeta*)). Undefined at zeta = 0.
cplx sigma_parameter(const DisplacementParams& p);

/// Number coherent state wavefunction <r, theta|zeta, k, n> built from the
/// Fock amplitudes of pncs_series and the oscillator basis at fixed m.
///
/// The amplitudes are computed once at construction (window grown until the
/// overflow mass is below tol); evaluation is then a single Laguerre sweep.
class PncsWavefunction {
 public:
  PncsWavefunction(const TwoModeQuantumNumbers& q, const DisplacementParams& p,
                   double tol = 1e-16);

  cplx operator()(double r, double angle) const;

  const TwoModeQuantumNumbers& labels() const noexcept { return q_; }
  const PncsResult& fock() const noexcept { return fock_; }

 private:
  TwoModeQuantumNumbers q_;
  PncsResult fock_;
  std::vector<double> basis_norm_;  // (-1)^t sqrt(t!/(t+|m|)!/pi)
};

/// Convenience wrapper that builds a PncsWavefunction for a single point.
cplx pncs_wavefunction_series(const TwoModeQuantumNumbers& q,
                              const DisplacementParams& p, double r,
                              double angle, double tol = 1e-16);

/// Printed ground-state form (normalized to one)
///   sqrt(1/(pi m!)) (1-|zeta|^2)^{(m+1)/2} (1-zeta)^{-(m+1)}
///   exp(-r^2 (1+zeta)/(2(1-zeta))) e^{i m theta} r^m.
cplx ground_state_closed(int m, const DisplacementParams& p, double r,
                         double angle);

/// Printed single-Laguerre closed form with argument
/// r^2 sigma/((1-zeta)(1-sigma)). Delegates to ho_eigenfunction at zeta = 0;
/// throws DomainError when n > 0 and |sigma - 1| < 1e-12.
cplx pncs_wavefunction_closed(const TwoModeQuantumNumbers& q,
                              const DisplacementParams& p, double r,
                              double angle);

/// Closed form re-derived from the series (generating function plus the
/// Laguerre multiplication theorem):
///   (-1)^n sqrt(n!/(pi (n+m)!)) e^{i m theta} (1-|zeta|^2)^{(m+1)/2}
///   (1+zeta*)^n (1+zeta)^{-(n+m+1)} exp(-r^2 (1-zeta)/(2(1+zeta)))
///   r^m L_n^m(r^2 (1-|zeta|^2)/|1+zeta|^2).
/// Regular for every |zeta| < 1.
cplx pncs_wavefunction_corrected(const TwoModeQuantumNumbers& q,
                                 const DisplacementParams& p, double r,
                                 double angle);

/// Tilt of the amplifier Hamiltonian (f = 2 omega, gamma = chi, phase Phi).
TiltResult amplifier_tilt(const AmplifierSpec& a);

/// 2 sqrt(omega^2 - chi^2)(n_r + |m|/2 + 1/2) - omega. DomainError when
/// omega <= chi.
double amplifier_energy(const TwoModeQuantumNumbers& q, const AmplifierSpec& a);

using Wavefunction = std::function<cplx(double r, double angle)>;

/// Upper limit X of the x = r^2 integration such that
/// e^{-decay X} X^power stays below 1e-18.
double radial_cutoff(double decay, double power);

/// <f|g> = int conj(f) g r dr dtheta. The angular integral is done
/// analytically: both functions must carry a single e^{i m theta}
/// dependence, and different m give exactly zero.
cplx polar_overlap(const Wavefunction& f, int m_f, const Wavefunction& g,
                   int m_g, double x_max, int nodes = 128);

/// Finite-difference forms of the two-mode operators in polar coordinates,
/// second-order central differences with step h in r and in theta.
namespace polar {

enum class Op { A, ADag, B, BDag, KPlus, KMinus, KZero, Casimir };

cplx apply(Op op, const Wavefunction& psi, double r, double angle, double h);

/// psi -> (op psi) as a new wavefunction, for composing operators.
Wavefunction lift(Op op, Wavefunction psi, double h);

/// K0^2 - (K+K- + K-K+)/2 assembled from the composed operator forms.
cplx casimir_composed(const Wavefunction& psi, double r, double angle,
                      double h);

}  // namespace polar

/// Image of |N, m> under a single-mode ladder operator: coefficient and
/// target labels; empty when the state is annihilated.
struct LadderImage {
  double coefficient = 0.0;
  int total = 0;
  int m = 0;
};

std::optional<LadderImage> ladder_image(polar::Op op,
                                        const TwoModeQuantumNumbers& q);

struct RealizationCheck {
  std::string name;
  double expected = 0.0;     // eigenvalue or ladder coefficient
  double residual_h = 0.0;   // max residual at step h
  double residual_h2 = 0.0;  // max residual at step h/2
  double ratio() const noexcept {
    return residual_h2 > 0.0 ? residual_h / residual_h2 : 0.0;
  }
};

/// Applies the finite-difference K0, K^2 (angular form and composed form),
/// K+, K-, a, a^dag, b, b^dag to the oscillator eigenfunction of q at the
/// given radii, at steps h and h/2.
std::vector<RealizationCheck> realization_checks(
    const TwoModeQuantumNumbers& q, double h, const std::vector<double>& radii,
    double angle = 0.37);

}  // namespace su11
