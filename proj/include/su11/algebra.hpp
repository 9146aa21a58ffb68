#pragma once

#include <Eigen/Dense>

#include <complex>

namespace su11 {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Lowest-weight label of a positive discrete-series representation; k > 0.
class BargmannIndex {
 public:
  explicit BargmannIndex(double k);

  double value() const noexcept { return k_; }
  friend bool operator==(BargmannIndex a, BargmannIndex b) noexcept {
    return a.k_ == b.k_;
  }

 private:
  double k_;
};

/// Number of top levels excluded from identity checks: max(4, dim/8).
int guard_band(int dim) noexcept;

/// K+, K-, K0 on the window {|k,n>, n = 0..dim-1}.
///
/// Entries are filled from the closed ladder formulas, so every entry that
/// lies inside the window equals the corresponding matrix element of the
/// infinite-dimensional operator. Only products of generators feel the cut;
/// commutator identities hold on the interior block n < dim - guard_band().
class TruncatedRep {
 public:
  TruncatedRep(BargmannIndex k, int dim);

  BargmannIndex k() const noexcept { return k_; }
  int dim() const noexcept { return dim_; }
  int guard_band() const noexcept { return su11::guard_band(dim_); }
  int interior() const noexcept;

  const Matrix& kplus() const noexcept { return kplus_; }
  const Matrix& kminus() const noexcept { return kminus_; }
  const Matrix& kzero() const noexcept { return kzero_; }

 private:
  BargmannIndex k_;
  int dim_;
  Matrix kplus_;
  Matrix kminus_;
  Matrix kzero_;
};

TruncatedRep build_discrete_series_rep(BargmannIndex k, int dim);

/// K0^2 - (K+K- + K-K+)/2 on the window. Equals k(k-1) on the interior block.
Matrix casimir(const TruncatedRep& rep);

/// Amplitudes over |k,n>, n = 0..dim-1.
///
/// tail_mass is the truncation-leakage diagnostic: probability sitting in the
/// top guard band or already pushed past the window (raised off the top
/// level, or series terms landing beyond dim). It is carried along and
/// reported; leaked probability is never folded back into the amplitudes.
class StateVector {
 public:
  StateVector(BargmannIndex k, Vector amplitudes, double tail_mass = 0.0);

  static StateVector basis(BargmannIndex k, int dim, int n);

  BargmannIndex k() const noexcept { return k_; }
  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  cplx operator[](int n) const { return amplitudes_(n); }
  double tail_mass() const noexcept { return tail_mass_; }

  double norm2() const noexcept { return amplitudes_.squaredNorm(); }
  /// Sum of |a_n|^2 over the top `levels` entries.
  double guard_mass(int levels) const noexcept;

 private:
  BargmannIndex k_;
  Vector amplitudes_;
  double tail_mass_;
};

StateVector apply_raising(const StateVector& state);
StateVector apply_lowering(const StateVector& state);
StateVector apply_kzero(const StateVector& state);

/// <a|b>, conjugate-linear in a. Throws std::invalid_argument on a k or
/// dimension mismatch.
cplx inner_product(const StateVector& a, const StateVector& b);

Matrix commutator(const Matrix& a, const Matrix& b);

/// max |m_ij| over i, j < block.
double max_abs_block(const Matrix& m, int block);

struct ClosureResiduals {
  double k0_kplus = 0.0;    // [K0,K+] - K+
  double k0_kminus = 0.0;   // [K0,K-] + K-
  double kminus_kplus = 0.0;  // [K-,K+] - 2K0

  double max() const noexcept;
};

/// su(1,1) commutation residuals of an arbitrary generator triple on the
/// leading `block` rows and columns.
ClosureResiduals closure_residuals(const Matrix& plus, const Matrix& minus,
                                   const Matrix& zero, int block);

}  // namespace su11
