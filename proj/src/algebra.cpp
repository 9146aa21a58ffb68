#include "su11/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace su11 {

BargmannIndex::BargmannIndex(double k) : k_(k) {
  if (!std::isfinite(k) || !(k > 0.0)) {
    throw std::invalid_argument("Bargmann index must be a finite k > 0, got " +
                                std::to_string(k));
  }
}

int guard_band(int dim) noexcept { return std::max(4, dim / 8); }

namespace {

double raising_factor(double k, int n) {
  return std::sqrt((n + 1.0) * (2.0 * k + n));
}

double lowering_factor(double k, int n) {
  return std::sqrt(n * (2.0 * k + n - 1.0));
}

}  // namespace

TruncatedRep::TruncatedRep(BargmannIndex k, int dim)
    : k_(k),
      dim_(dim),
      kplus_(Matrix::Zero(dim, dim)),
      kzero_(Matrix::Zero(dim, dim)) {
  if (dim < 2) {
    throw std::invalid_argument("truncation dim must be >= 2, got " +
                                std::to_string(dim));
  }
  const double kv = k.value();
  for (int n = 0; n + 1 < dim; ++n) kplus_(n + 1, n) = raising_factor(kv, n);
  for (int n = 0; n < dim; ++n) kzero_(n, n) = kv + n;
  kminus_ = kplus_.adjoint();
}

int TruncatedRep::interior() const noexcept {
  return std::max(1, dim_ - guard_band());
}

TruncatedRep build_discrete_series_rep(BargmannIndex k, int dim) {
  return TruncatedRep(k, dim);
}

Matrix casimir(const TruncatedRep& rep) {
  const Matrix& kp = rep.kplus();
  const Matrix& km = rep.kminus();
  const Matrix& k0 = rep.kzero();
  return k0 * k0 - 0.5 * (kp * km + km * kp);
}

StateVector::StateVector(BargmannIndex k, Vector amplitudes, double tail_mass)
    : k_(k), amplitudes_(std::move(amplitudes)), tail_mass_(tail_mass) {}

StateVector StateVector::basis(BargmannIndex k, int dim, int n) {
  if (n < 0 || n >= dim) {
    throw std::invalid_argument("basis level " + std::to_string(n) +
                                " outside window of size " +
                                std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return StateVector(k, std::move(v));
}

double StateVector::guard_mass(int levels) const noexcept {
  const int d = dim();
  const int lv = std::clamp(levels, 0, d);
  return amplitudes_.tail(lv).squaredNorm();
}

StateVector apply_raising(const StateVector& state) {
  const double k = state.k().value();
  const int d = state.dim();
  const Vector& a = state.amplitudes();
  Vector out = Vector::Zero(d);
  for (int n = 0; n + 1 < d; ++n) out(n + 1) = raising_factor(k, n) * a(n);
  const double lost = std::norm(raising_factor(k, d - 1) * a(d - 1));
  return StateVector(state.k(), std::move(out), state.tail_mass() + lost);
}

StateVector apply_lowering(const StateVector& state) {
  const double k = state.k().value();
  const int d = state.dim();
  const Vector& a = state.amplitudes();
  Vector out = Vector::Zero(d);
  for (int n = 1; n < d; ++n) out(n - 1) = lowering_factor(k, n) * a(n);
  return StateVector(state.k(), std::move(out), state.tail_mass());
}

StateVector apply_kzero(const StateVector& state) {
  const double k = state.k().value();
  Vector out = state.amplitudes();
  for (int n = 0; n < state.dim(); ++n) out(n) *= (k + n);
  return StateVector(state.k(), std::move(out), state.tail_mass());
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.k() == b.k())) {
    throw std::invalid_argument("inner_product: Bargmann index mismatch");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
  return a.amplitudes().dot(b.amplitudes());
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double max_abs_block(const Matrix& m, int block) {
  const int r = std::min<int>(block, static_cast<int>(m.rows()));
  const int c = std::min<int>(block, static_cast<int>(m.cols()));
  if (r <= 0 || c <= 0) return 0.0;
  return m.topLeftCorner(r, c).cwiseAbs().maxCoeff();
}

double ClosureResiduals::max() const noexcept {
  return std::max({k0_kplus, k0_kminus, kminus_kplus});
}

ClosureResiduals closure_residuals(const Matrix& plus, const Matrix& minus,
                                   const Matrix& zero, int block) {
  ClosureResiduals r;
  r.k0_kplus = max_abs_block(commutator(zero, plus) - plus, block);
  r.k0_kminus = max_abs_block(commutator(zero, minus) + minus, block);
  r.kminus_kplus = max_abs_block(commutator(minus, plus) - 2.0 * zero, block);
  return r;
}

}  // namespace su11
