#include "su11/displacement.hpp"

#include "su11/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace su11 {

DisplacementParams make_params(double tau, double phi) {
  if (!std::isfinite(tau) || !std::isfinite(phi)) {
    throw std::invalid_argument("displacement parameters must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(phi, two_pi);
  if (reduced < 0.0) reduced += two_pi;

  DisplacementParams p;
  p.tau = tau;
  p.phi = reduced;
  if (tau == 0.0) return p;

  const cplx phase = std::polar(1.0, -reduced);
  const double half = 0.5 * tau;
  const double mod_xi = std::abs(half);
  p.xi = -half * phase;
  p.zeta = -std::tanh(half) * phase;
  // ln(1 - tanh^2 x) = -2 ln cosh x; the cosh form keeps precision for large |tau|.
  p.eta = -2.0 * (mod_xi + std::log1p(std::exp(-2.0 * mod_xi)) - std::log(2.0));
  p.alpha = std::sinh(2.0 * mod_xi);
  const double s = std::sinh(mod_xi);
  p.beta = s * s;
  return p;
}

double params_distance(const DisplacementParams& a,
                       const DisplacementParams& b) {
  return std::max({std::abs(a.xi - b.xi), std::abs(a.zeta - b.zeta),
                   std::abs(a.eta - b.eta), std::abs(a.alpha - b.alpha),
                   std::abs(a.beta - b.beta)});
}

namespace {

// exp(z K+) restricted to the window; column j holds z^i/i! (K+)^i |j>.
Matrix raising_exponential(double k, int dim, cplx z) {
  Matrix e = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    cplx v = 1.0;
    e(j, j) = v;
    for (int i = 1; j + i < dim; ++i) {
      const int level = j + i;
      v *= z * std::sqrt(level * (2.0 * k + level - 1.0)) / static_cast<double>(i);
      e(level, j) = v;
    }
  }
  return e;
}

Matrix generator(const TruncatedRep& rep, Generator which) {
  switch (which) {
    case Generator::Plus:
      return rep.kplus();
    case Generator::Minus:
      return rep.kminus();
    case Generator::Zero:
      return rep.kzero();
  }
  throw std::logic_error("unknown generator");
}

}  // namespace

Matrix displacement_normal_form(const TruncatedRep& rep,
                                const DisplacementParams& p) {
  const int dim = rep.dim();
  const double k = rep.k().value();
  if (p.is_identity()) return Matrix::Identity(dim, dim);

  const Matrix upper = raising_exponential(k, dim, p.zeta);
  // exp(-zeta* K-) = [exp(-zeta K+)]^dagger
  const Matrix lower = raising_exponential(k, dim, -p.zeta).adjoint();
  Eigen::VectorXd diag(dim);
  for (int n = 0; n < dim; ++n) diag(n) = std::exp(p.eta * (k + n));
  return upper * diag.asDiagonal() * lower;
}

Matrix matrix_exponential(const Matrix& a) {
  const int dim = static_cast<int>(a.rows());
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  const Matrix b = a / std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int m = 1; m <= 40; ++m) {
    term = term * b / static_cast<double>(m);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Matrix displacement_exponential(const TruncatedRep& rep,
                                const DisplacementParams& p) {
  if (p.is_identity()) return Matrix::Identity(rep.dim(), rep.dim());
  const Matrix a = p.xi * rep.kplus() - std::conj(p.xi) * rep.kminus();
  return matrix_exponential(a);
}

int certified_block(const TruncatedRep& rep, const DisplacementParams& p,
                    double mass_eps, double rounding_eps) {
  const int dim = rep.dim();
  const int g = rep.guard_band();
  const int cap = dim - g;
  if (p.is_identity()) return cap;
  const double k = rep.k().value();
  const Matrix nf = displacement_normal_form(rep, p);
  // Entrywise magnitude of the summands in the normal-form product; the
  // rounding error of entry (i, j) is a small multiple of u * bound(i, j).
  const Eigen::MatrixXd upper = raising_exponential(k, dim, p.zeta).cwiseAbs();
  const Eigen::MatrixXd lower =
      raising_exponential(k, dim, -p.zeta).adjoint().cwiseAbs();
  Eigen::VectorXd diag(dim);
  for (int n = 0; n < dim; ++n) diag(n) = std::exp(p.eta * (k + n));
  const Eigen::MatrixXd bound = upper * diag.asDiagonal() * lower;
  constexpr double unit_roundoff = 1.1102230246251565e-16;
  int block = 0;
  for (int j = 0; j < cap; ++j) {
    const double mass = nf.col(j).tail(g).squaredNorm();
    const double rounding = unit_roundoff * j * bound.col(j).maxCoeff();
    if (!(mass <= mass_eps) || !(rounding <= rounding_eps)) break;
    block = j + 1;
  }
  return block;
}

StateVector standard_coherent_state(BargmannIndex k,
                                    const DisplacementParams& p, int dim) {
  if (std::abs(p.zeta) >= 1.0) {
    throw DomainError("coherent state requires |zeta| < 1");
  }
  const double kv = k.value();
  Vector a = Vector::Zero(dim);
  if (p.is_identity()) {
    a(0) = 1.0;
    return StateVector(k, std::move(a));
  }
  const double mod = std::abs(p.zeta);
  const double arg = std::arg(p.zeta);
  const double log_norm = kv * std::log1p(-mod * mod);
  for (int s = 0; s < dim; ++s) {
    const double log_mag = log_norm + s * std::log(mod) +
                           0.5 * (std::lgamma(s + 2.0 * kv) -
                                  std::lgamma(s + 1.0) - std::lgamma(2.0 * kv));
    a(s) = std::polar(std::exp(log_mag), s * arg);
  }
  return StateVector(k, std::move(a));
}

PncsResult pncs_series(BargmannIndex k, int n, const DisplacementParams& p,
                       int dim, double tol, TruncationPolicy policy) {
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  if (n < 0 || n >= dim) {
    throw std::invalid_argument("source level n=" + std::to_string(n) +
                                " outside window of size " +
                                std::to_string(dim));
  }
  const double mod = std::abs(p.zeta);
  if (!(mod < 1.0)) {
    throw DomainError("PNCS series does not converge for |zeta| >= 1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  if (p.is_identity()) {
    return PncsResult{StateVector::basis(k, dim, n), p, n, 1, 0.0, 0.0};
  }

  constexpr int max_s = 200000;
  const double kv = k.value();
  const double log_mod = std::log(mod);
  const double arg_zeta = std::arg(p.zeta);
  const double arg_mconj = std::arg(-std::conj(p.zeta));

  std::vector<cplx> amps(static_cast<std::size_t>(dim), cplx{0.0, 0.0});
  int terms = 0;
  double residual = 0.0;

  for (int j = 0; j <= n; ++j) {
    // Everything in the (j, s) term that does not depend on s.
    const double base = j * log_mod + p.eta * (kv + n - j) +
                        0.5 * (std::lgamma(2.0 * kv + n) + std::lgamma(n + 1.0)) -
                        std::lgamma(2.0 * kv + n - j) - std::lgamma(n - j + 1.0) -
                        std::lgamma(j + 1.0);
    double prev = 0.0;
    for (int s = 0;; ++s) {
      if (s > max_s) {
        throw DomainError("PNCS series failed to converge within " +
                          std::to_string(max_s) + " terms");
      }
      const int t = n - j + s;
      const double log_mag = base + s * log_mod +
                             0.5 * (std::lgamma(2.0 * kv + t) +
                                    std::lgamma(t + 1.0)) -
                             std::lgamma(s + 1.0);
      const double mag = std::exp(log_mag);
      const cplx term = std::polar(mag, s * arg_zeta + j * arg_mconj);
      if (static_cast<std::size_t>(t) >= amps.size()) amps.resize(t + 1, 0.0);
      amps[static_cast<std::size_t>(t)] += term;
      ++terms;
      if (s > 0 && prev > 0.0) {
        const double q = mag / prev;
        if (q < 1.0) {
          const double tail = mag * q / (1.0 - q);
          if (tail < tol * (1.0 - mod)) {
            residual += tail;
            break;
          }
        }
      }
      prev = mag;
    }
  }

  Vector window(dim);
  for (int t = 0; t < dim; ++t) window(t) = amps[static_cast<std::size_t>(t)];
  double overflow = 0.0;
  for (std::size_t t = static_cast<std::size_t>(dim); t < amps.size(); ++t) {
    overflow += std::norm(amps[t]);
  }
  StateVector probe(k, window);
  const double tail = probe.guard_mass(guard_band(dim)) + overflow;
  PncsResult result{StateVector(k, std::move(window), tail), p, n, terms,
                    residual, overflow};
  if (policy == TruncationPolicy::Throw && tail > tol) {
    throw TruncationError("dim=" + std::to_string(dim) +
                          " too small for PNCS n=" + std::to_string(n) +
                          ": tail mass " + std::to_string(tail) +
                          " exceeds tol " + std::to_string(tol));
  }
  return result;
}

Matrix l_operator_closed(const TruncatedRep& rep, const DisplacementParams& p,
                         Generator which) {
  if (p.is_identity()) return generator(rep, which);
  const Matrix& kp = rep.kplus();
  const Matrix& km = rep.kminus();
  const Matrix& k0 = rep.kzero();
  const double mod = std::abs(p.xi);
  const cplx u = p.xi / mod;  // xi/|xi|
  const cplx uc = std::conj(u);
  const cplx ratio = p.xi / std::conj(p.xi);
  switch (which) {
    case Generator::Plus:
      return -uc * p.alpha * k0 + p.beta * (kp + std::conj(ratio) * km) + kp;
    case Generator::Minus:
      return -u * p.alpha * k0 + p.beta * (km + ratio * kp) + km;
    case Generator::Zero:
      return (2.0 * p.beta + 1.0) * k0 - (0.5 * p.alpha * u) * kp -
             (0.5 * p.alpha * uc) * km;
  }
  throw std::logic_error("unknown generator");
}

Matrix l_operator_conjugated(const TruncatedRep& rep, const Matrix& d,
                             Generator which) {
  return d * generator(rep, which) * d.adjoint();
}

double LadderResiduals::max() const noexcept {
  return std::max({plus, minus, zero});
}

LadderResiduals pncs_ladder_check(BargmannIndex k, int n,
                                  const DisplacementParams& p, int dim) {
  const int interior = dim - guard_band(dim);
  if (n < 0 || n + 1 >= interior) {
    throw std::invalid_argument("pncs_ladder_check needs n+1 < dim - guard");
  }
  const TruncatedRep rep(k, dim);
  const double kv = k.value();
  auto state = [&](int level) {
    return pncs_series(k, level, p, dim, 1e-18, TruncationPolicy::Report)
        .state.amplitudes();
  };
  const Vector psi = state(n);
  const Vector up = state(n + 1);
  const Matrix lp = l_operator_closed(rep, p, Generator::Plus);
  const Matrix lm = l_operator_closed(rep, p, Generator::Minus);
  const Matrix l0 = l_operator_closed(rep, p, Generator::Zero);

  auto head_norm = [interior](const Vector& v) {
    return v.head(interior).norm();
  };

  LadderResiduals r;
  r.plus = head_norm(lp * psi - std::sqrt((n + 1.0) * (2.0 * kv + n)) * up);
  Vector down = Vector::Zero(dim);
  if (n > 0) down = state(n - 1);
  r.minus = head_norm(lm * psi - std::sqrt(n * (2.0 * kv + n - 1.0)) * down);
  const Vector l0psi = l0 * psi;
  r.zero = head_norm(l0psi - (kv + n) * psi);
  r.l0_expectation = psi.dot(l0psi).real() / psi.squaredNorm();
  return r;
}

namespace {

std::vector<PncsResult> pncs_family(BargmannIndex k,
                                    const DisplacementParams& p, int n_max,
                                    int dim, double& max_tail) {
  if (n_max < 0 || n_max >= dim) {
    throw std::invalid_argument("n_max must lie in [0, dim)");
  }
  std::vector<PncsResult> states;
  states.reserve(static_cast<std::size_t>(n_max + 1));
  max_tail = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    states.push_back(
        pncs_series(k, n, p, dim, 1e-18, TruncationPolicy::Report));
    max_tail = std::max(max_tail, states.back().state.tail_mass());
  }
  return states;
}

}  // namespace

GramResult gram_matrix(BargmannIndex k, const DisplacementParams& p,
                       int n_max, int dim, double tol) {
  GramResult g;
  const auto states = pncs_family(k, p, n_max, dim, g.max_tail_mass);
  g.tail_warning = g.max_tail_mass > tol;
  g.matrix = Matrix::Zero(n_max + 1, n_max + 1);
  for (int i = 0; i <= n_max; ++i) {
    for (int j = 0; j <= n_max; ++j) {
      g.matrix(i, j) = inner_product(states[i].state, states[j].state);
    }
  }
  return g;
}

GramResult completeness_partial_sum(BargmannIndex k,
                                    const DisplacementParams& p, int n_max,
                                    int dim, double tol) {
  GramResult g;
  const auto states = pncs_family(k, p, n_max, dim, g.max_tail_mass);
  g.tail_warning = g.max_tail_mass > tol;
  g.matrix = Matrix::Zero(dim, dim);
  for (const auto& s : states) {
    const Vector& v = s.state.amplitudes();
    g.matrix += v * v.adjoint();
  }
  return g;
}

}  // namespace su11
