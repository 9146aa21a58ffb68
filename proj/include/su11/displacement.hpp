#pragma once

#include "su11/algebra.hpp"

namespace su11 {

/// Coherent-state parameters derived from (tau, phi):
///   xi = -tau/2 e^{-i phi},  zeta = -tanh(tau/2) e^{-i phi},
///   eta = ln(1 - |zeta|^2) = -2 ln cosh|xi|,
///   alpha = sinh 2|xi|,  beta = (cosh 2|xi| - 1)/2.
struct DisplacementParams {
  double tau = 0.0;
  double phi = 0.0;  // reduced to [0, 2pi)
  cplx xi{0.0, 0.0};
  cplx zeta{0.0, 0.0};
  double eta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  bool is_identity() const noexcept { return xi == cplx{0.0, 0.0}; }
};

DisplacementParams make_params(double tau, double phi);

/// Largest componentwise difference of the derived fields; used to decide
/// whether two parameter bundles describe the same displacement.
double params_distance(const DisplacementParams& a, const DisplacementParams& b);

/// exp(zeta K+) exp(eta K0) exp(-zeta* K-) on the window.
///
/// The outer factors are triangular and their in-window entries are exact
/// (the ladder series terminates inside the window), so every entry of the
/// product equals the infinite-dimensional matrix element <k,i|D|k,j>.
Matrix displacement_normal_form(const TruncatedRep& rep,
                                const DisplacementParams& p);

/// Dense exp(a) by scaling, Taylor summation and repeated squaring.
Matrix matrix_exponential(const Matrix& a);

/// exp(xi K+ - xi* K-) of the truncated generator. Independent of the normal
/// form; wrong near the top of the window, exact to rounding well inside it.
Matrix displacement_exponential(const TruncatedRep& rep,
                                const DisplacementParams& p);

/// Number of leading levels on which displaced quantities are trusted: the
/// longest prefix of columns j of the normal form whose mass in the guard
/// band is at most mass_eps and whose accumulated rounding bound
/// u * j * max_i (|U| diag |L|)_ij is at most rounding_eps. Capped at
/// dim - guard_band.
int certified_block(const TruncatedRep& rep, const DisplacementParams& p,
                    double mass_eps = 1e-24, double rounding_eps = 1e-12);

/// (1-|zeta|^2)^k sum_s sqrt(Gamma(s+2k)/(s! Gamma(2k))) zeta^s |k,s>,
/// evaluated term by term with log-gamma.
StateVector standard_coherent_state(BargmannIndex k,
                                    const DisplacementParams& p, int dim);

enum class TruncationPolicy { Throw, Report };

struct PncsResult {
  StateVector state;
  DisplacementParams params;
  int source_n = 0;
  int series_terms_used = 0;
  /// Bound on the discarded s-tail, summed over j.
  double truncation_residual = 0.0;
  /// Probability beyond the window (not part of `state`).
  double overflow_mass = 0.0;

  /// tail_mass of the state (guard band plus overflow) is at most tol.
  bool within(double tol) const noexcept { return state.tail_mass() <= tol; }
};

/// D(xi)|k,n> from the double series over j = 0..n and s >= 0, with Gamma
/// ratios taken through lgamma. The s-sum for each j stops once the terms
/// are decreasing and the geometric tail bound drops below tol.
///
/// With TruncationPolicy::Throw, a state whose guard-band plus overflow
/// mass exceeds tol raises TruncationError. |zeta| >= 1 raises DomainError.
PncsResult pncs_series(BargmannIndex k, int n, const DisplacementParams& p,
                       int dim, double tol = 1e-16,
                       TruncationPolicy policy = TruncationPolicy::Throw);

enum class Generator { Plus, Minus, Zero };

/// L = D K D^dagger from the closed linear combinations of K0, K+, K-.
/// At xi = 0 this is K itself.
Matrix l_operator_closed(const TruncatedRep& rep, const DisplacementParams& p,
                         Generator which);

/// D K D^dagger by explicit matrix products, with D supplied by the caller.
Matrix l_operator_conjugated(const TruncatedRep& rep, const Matrix& d,
                             Generator which);

struct LadderResiduals {
  double plus = 0.0;   // |L+ psi_n - sqrt((n+1)(2k+n)) psi_{n+1}|
  double minus = 0.0;  // |L- psi_n - sqrt(n(2k+n-1)) psi_{n-1}|
  double zero = 0.0;   // |L0 psi_n - (k+n) psi_n|
  double l0_expectation = 0.0;

  double max() const noexcept;
};

/// Ladder relations of the L operators on the number coherent states.
/// Requires n + 1 < dim - guard_band(dim).
LadderResiduals pncs_ladder_check(BargmannIndex k, int n,
                                  const DisplacementParams& p, int dim);

struct GramResult {
  Matrix matrix;
  double max_tail_mass = 0.0;
  bool tail_warning = false;
};

/// <zeta,k,n'|zeta,k,n> for n, n' <= n_max.
GramResult gram_matrix(BargmannIndex k, const DisplacementParams& p,
                       int n_max, int dim, double tol = 1e-20);

/// sum_{n <= n_max} |zeta,k,n><zeta,k,n| as a dim x dim matrix.
GramResult completeness_partial_sum(BargmannIndex k,
                                    const DisplacementParams& p, int n_max,
                                    int dim, double tol = 1e-20);

}  // namespace su11
