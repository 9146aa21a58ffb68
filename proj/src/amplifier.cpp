#include "su11/amplifier.hpp"

#include "su11/errors.hpp"
#include "su11/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace su11 {

namespace {

constexpr double inv_sqrt_two_pi = 0.39894228040143267794;  // 1/sqrt(2 pi)

double sign_of_parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// sqrt(2 n!/(n+m)!)
double radial_norm(int n, int m) {
  return std::sqrt(2.0 * std::exp(std::lgamma(n + 1.0) - std::lgamma(n + m + 1.0)));
}

}  // namespace

TwoModeQuantumNumbers::TwoModeQuantumNumbers(int total, int m)
    : total_(total), m_(m) {
  if (total < 0) throw std::invalid_argument("N must be >= 0");
  if (std::abs(m) > total) throw std::invalid_argument("need |m| <= N");
  if ((total - m) % 2 != 0) throw std::invalid_argument("N - m must be even");
}

TwoModeQuantumNumbers TwoModeQuantumNumbers::from_radial(int n_r, int m) {
  if (n_r < 0) throw std::invalid_argument("n_r must be >= 0");
  return TwoModeQuantumNumbers(2 * n_r + std::abs(m), m);
}

cplx ho_eigenfunction(const TwoModeQuantumNumbers& q, double r, double angle) {
  const int nr = q.radial();
  const int am = q.abs_m();
  const double x = r * r;
  const double radial = inv_sqrt_two_pi * sign_of_parity(nr) * radial_norm(nr, am) *
                        std::pow(r, am) * laguerre(nr, am, x) *
                        std::exp(-0.5 * x);
  return std::polar(radial, q.m() * angle);
}

cplx sigma_parameter(const DisplacementParams& p) {
  if (p.is_identity()) {
    throw DomainError("sigma is undefined at zeta = 0");
  }
  const double mod2 = std::norm(p.zeta);
  return (1.0 - mod2) / ((1.0 - p.zeta) * (-std::conj(p.zeta)));
}

PncsWavefunction::PncsWavefunction(const TwoModeQuantumNumbers& q,
                                   const DisplacementParams& p, double tol)
    : q_(q), fock_{StateVector::basis(q.k(), 2, 0), p, 0, 0, 0.0, 0.0} {
  const int n = q.radial();
  const double mod = std::abs(p.zeta);
  if (!(mod < 1.0)) {
    throw DomainError("wavefunction series does not converge for |zeta| >= 1");
  }
  int dim = std::max(64, static_cast<int>(4.0 * (n + q.abs_m() + 8) /
                                          std::max(1e-3, 1.0 - mod)));
  constexpr int max_dim = 1 << 15;
  for (;;) {
    fock_ = pncs_series(q.k(), n, p, dim, tol, TruncationPolicy::Report);
    if (fock_.state.tail_mass() < 1e-26) break;
    if (dim >= max_dim) {
      throw TruncationError("wavefunction series: window of " +
                            std::to_string(dim) + " levels still leaks");
    }
    dim *= 2;
  }
  basis_norm_.resize(static_cast<std::size_t>(dim));
  for (int t = 0; t < dim; ++t) {
    basis_norm_[static_cast<std::size_t>(t)] =
        inv_sqrt_two_pi * sign_of_parity(t) * radial_norm(t, q.abs_m());
  }
}

cplx PncsWavefunction::operator()(double r, double angle) const {
  const int am = q_.abs_m();
  const double x = r * r;
  const Vector& a = fock_.state.amplitudes();
  const int dim = static_cast<int>(a.size());
  // Laguerre sweep over degree t at fixed order |m|.
  double prev = 1.0;
  double cur = 1.0 + am - x;
  cplx sum = a(0) * basis_norm_[0];
  for (int t = 1; t < dim; ++t) {
    if (t > 1) {
      const int j = t - 1;
      const double next =
          ((2.0 * j + 1.0 + am - x) * cur - (j + am) * prev) / (j + 1.0);
      prev = cur;
      cur = next;
    }
    sum += a(t) * (basis_norm_[static_cast<std::size_t>(t)] * cur);
  }
  const double envelope = std::pow(r, am) * std::exp(-0.5 * x);
  return sum * envelope * std::polar(1.0, q_.m() * angle);
}

cplx pncs_wavefunction_series(const TwoModeQuantumNumbers& q,
                              const DisplacementParams& p, double r,
                              double angle, double tol) {
  return PncsWavefunction(q, p, tol)(r, angle);
}

cplx ground_state_closed(int m, const DisplacementParams& p, double r,
                         double angle) {
  const int am = std::abs(m);
  const cplx z = p.zeta;
  const double mod2 = std::norm(z);
  const double x = r * r;
  const double norm = std::sqrt(1.0 / (std::numbers::pi * std::tgamma(am + 1.0)));
  return norm * std::pow(1.0 - mod2, 0.5 * (am + 1)) /
         std::pow(1.0 - z, am + 1) * std::exp(-x * (z + 1.0) / (2.0 * (1.0 - z))) *
         std::polar(std::pow(r, am), m * angle);
}

cplx pncs_wavefunction_closed(const TwoModeQuantumNumbers& q,
                              const DisplacementParams& p, double r,
                              double angle) {
  if (p.is_identity()) return ho_eigenfunction(q, r, angle);
  const int n = q.radial();
  const int am = q.abs_m();
  const cplx z = p.zeta;
  const cplx zc = std::conj(z);
  const double mod2 = std::norm(z);
  const double x = r * r;
  const cplx sigma = sigma_parameter(p);
  if (n > 0 && std::abs(sigma - 1.0) < 1e-12) {
    throw DomainError(
        "closed form singular: sigma = 1 puts a pole in the Laguerre "
        "argument; use the series route");
  }
  const cplx arg = (n > 0) ? x * sigma / ((1.0 - z) * (1.0 - sigma)) : cplx{0.0};
  return radial_norm(n, am) * sign_of_parity(n) * inv_sqrt_two_pi *
         std::polar(1.0, q.m() * angle) * std::pow(-zc, n) *
         std::pow(1.0 - mod2, 0.5 * am + 0.5) * std::pow(1.0 + sigma, n) /
         std::pow(1.0 - z, am + 1) * std::exp(-x * (z + 1.0) / (2.0 * (1.0 - z))) *
         std::pow(r, am) * laguerre(n, am, arg);
}

cplx pncs_wavefunction_corrected(const TwoModeQuantumNumbers& q,
                                 const DisplacementParams& p, double r,
                                 double angle) {
  const int n = q.radial();
  const int am = q.abs_m();
  const cplx z = p.zeta;
  const double mod2 = std::norm(z);
  const double x = r * r;
  const double lag_arg = x * (1.0 - mod2) / std::norm(1.0 + z);
  return radial_norm(n, am) * sign_of_parity(n) * inv_sqrt_two_pi *
         std::polar(1.0, q.m() * angle) * std::pow(1.0 - mod2, 0.5 * (am + 1)) *
         std::pow(1.0 + std::conj(z), n) / std::pow(1.0 + z, n + am + 1) *
         std::exp(-x * (1.0 - z) / (2.0 * (1.0 + z))) * std::pow(r, am) *
         laguerre(n, am, lag_arg);
}

TiltResult amplifier_tilt(const AmplifierSpec& a) {
  if (!(a.omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (a.chi < 0.0) throw std::invalid_argument("chi must be >= 0");
  if (!(a.omega > a.chi)) {
    throw DomainError("above threshold: omega <= chi, tilting undefined");
  }
  return tilt_parameters(a.as_su11());
}

double amplifier_energy(const TwoModeQuantumNumbers& q,
                        const AmplifierSpec& a) {
  const TiltResult t = amplifier_tilt(a);
  return t.omega_eff * (q.radial() + 0.5 * q.abs_m() + 0.5) - a.omega;
}

double radial_cutoff(double decay, double power) {
  if (!(decay > 0.0)) throw std::invalid_argument("decay rate must be > 0");
  const double target = 18.0 * std::log(10.0);
  double x = std::max(1.0, target / decay);
  for (int i = 0; i < 200; ++i) {
    const double next =
        std::max(1.0, (target + std::max(0.0, power) * std::log(x)) / decay);
    if (std::abs(next - x) < 1e-10 * x) return next;
    x = next;
  }
  return x;
}

cplx polar_overlap(const Wavefunction& f, int m_f, const Wavefunction& g,
                   int m_g, double x_max, int nodes) {
  if (m_f != m_g) return 0.0;
  const GaussLegendreRule rule = gauss_legendre(nodes).mapped(0.0, x_max);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = std::sqrt(rule.nodes[i]);
    sum += rule.weights[i] * std::conj(f(r, 0.0)) * g(r, 0.0);
  }
  // r dr = dx/2 and the angular integral gives 2 pi.
  return std::numbers::pi * sum;
}

namespace polar {

namespace {

struct Stencil {
  cplx f, fr, frr, fa, faa;
};

Stencil stencil(const Wavefunction& psi, double r, double angle, double h) {
  const cplx c = psi(r, angle);
  const cplx rp = psi(r + h, angle);
  const cplx rm = psi(r - h, angle);
  const cplx ap = psi(r, angle + h);
  const cplx am = psi(r, angle - h);
  return Stencil{c, (rp - rm) / (2.0 * h), (rp - 2.0 * c + rm) / (h * h),
                 (ap - am) / (2.0 * h), (ap - 2.0 * c + am) / (h * h)};
}

}  // namespace

cplx apply(Op op, const Wavefunction& psi, double r, double angle, double h) {
  const Stencil s = stencil(psi, r, angle, h);
  const cplx i{0.0, 1.0};
  switch (op) {
    case Op::A:
      return std::polar(0.5, -angle) * (r * s.f + s.fr - i / r * s.fa);
    case Op::ADag:
      return std::polar(0.5, angle) * (r * s.f - s.fr - i / r * s.fa);
    case Op::B:
      return std::polar(0.5, angle) * (r * s.f + s.fr + i / r * s.fa);
    case Op::BDag:
      return std::polar(0.5, -angle) * (r * s.f - s.fr + i / r * s.fa);
    case Op::KPlus:
      return 0.25 * (r * r * s.f - 2.0 * r * s.fr - 2.0 * s.f + s.frr +
                     s.fr / r + s.faa / (r * r));
    case Op::KMinus:
      return 0.25 * (r * r * s.f + 2.0 * r * s.fr + 2.0 * s.f + s.frr +
                     s.fr / r + s.faa / (r * r));
    case Op::KZero:
      // (r^2 - laplacian)/4
      return 0.25 * (r * r * s.f - s.frr - s.fr / r - s.faa / (r * r));
    case Op::Casimir:
      return -0.25 * (s.f + s.faa);
  }
  throw std::logic_error("unknown polar operator");
}

Wavefunction lift(Op op, Wavefunction psi, double h) {
  return [op, psi = std::move(psi), h](double r, double angle) {
    return apply(op, psi, r, angle, h);
  };
}

cplx casimir_composed(const Wavefunction& psi, double r, double angle,
                      double h) {
  const Wavefunction k0 = lift(Op::KZero, psi, h);
  const Wavefunction kp = lift(Op::KPlus, psi, h);
  const Wavefunction km = lift(Op::KMinus, psi, h);
  return apply(Op::KZero, k0, r, angle, h) -
         0.5 * (apply(Op::KPlus, km, r, angle, h) +
                apply(Op::KMinus, kp, r, angle, h));
}

}  // namespace polar

std::optional<LadderImage> ladder_image(polar::Op op,
                                        const TwoModeQuantumNumbers& q) {
  const int total = q.total();
  const int m = q.m();
  // n_a = (N+m)/2, n_b = (N-m)/2
  const int na = (total + m) / 2;
  const int nb = (total - m) / 2;
  switch (op) {
    case polar::Op::A:
      if (na == 0) return std::nullopt;
      return LadderImage{std::sqrt(static_cast<double>(na)), total - 1, m - 1};
    case polar::Op::ADag:
      return LadderImage{std::sqrt(na + 1.0), total + 1, m + 1};
    case polar::Op::B:
      if (nb == 0) return std::nullopt;
      return LadderImage{std::sqrt(static_cast<double>(nb)), total - 1, m + 1};
    case polar::Op::BDag:
      return LadderImage{std::sqrt(nb + 1.0), total + 1, m - 1};
    default:
      throw std::invalid_argument("ladder_image: not a single-mode operator");
  }
}

namespace {

// max over radii of |lhs(r) - rhs(r)| with lhs from the finite-difference
// operator at step h.
template <typename Lhs, typename Rhs>
double max_residual(const std::vector<double>& radii, double angle, Lhs lhs,
                    Rhs rhs) {
  double worst = 0.0;
  for (double r : radii) worst = std::max(worst, std::abs(lhs(r) - rhs(r)));
  return worst;
}

}  // namespace

std::vector<RealizationCheck> realization_checks(
    const TwoModeQuantumNumbers& q, double h, const std::vector<double>& radii,
    double angle) {
  for (double r : radii) {
    if (!(r > 2.0 * h)) {
      throw std::invalid_argument("realization_checks: radius " +
                                  std::to_string(r) + " too close to origin");
    }
  }
  const Wavefunction psi = [q](double r, double a) {
    return ho_eigenfunction(q, r, a);
  };
  auto eval = [&](const std::string& name, double expected, auto lhs_at,
                  const Wavefunction& rhs) {
    RealizationCheck c;
    c.name = name;
    c.expected = expected;
    for (int pass = 0; pass < 2; ++pass) {
      const double step = pass == 0 ? h : 0.5 * h;
      const double res = max_residual(
          radii, angle, [&](double r) { return lhs_at(r, step); },
          [&](double r) { return rhs(r, angle); });
      (pass == 0 ? c.residual_h : c.residual_h2) = res;
    }
    return c;
  };
  auto scaled = [](double c, Wavefunction f) -> Wavefunction {
    return [c, f = std::move(f)](double r, double a) { return c * f(r, a); };
  };
  auto op_at = [&](polar::Op op) {
    return [&, op](double r, double step) {
      return polar::apply(op, psi, r, angle, step);
    };
  };

  std::vector<RealizationCheck> out;
  const double k0_eig = q.kzero_eigenvalue();
  out.push_back(eval("K0 eigenvalue (N+1)/2", k0_eig, op_at(polar::Op::KZero),
                     scaled(k0_eig, psi)));
  const double cas = 0.25 * (q.m() * q.m() - 1.0);
  out.push_back(eval("Casimir -(1+d2/dtheta2)/4 eigenvalue (m^2-1)/4", cas,
                     op_at(polar::Op::Casimir), scaled(cas, psi)));
  out.push_back(eval(
      "Casimir K0^2-(K+K-+K-K+)/2 eigenvalue (m^2-1)/4", cas,
      [&](double r, double step) {
        return polar::casimir_composed(psi, r, angle, step);
      },
      scaled(cas, psi)));

  const int n = q.radial();
  const double k = q.k().value();
  {
    const TwoModeQuantumNumbers up = TwoModeQuantumNumbers::from_radial(n + 1, q.m());
    const double c = std::sqrt((n + 1.0) * (2.0 * k + n));
    out.push_back(eval("K+ ladder", c, op_at(polar::Op::KPlus),
                       scaled(c, [up](double r, double a) {
                         return ho_eigenfunction(up, r, a);
                       })));
  }
  {
    const double c = std::sqrt(n * (2.0 * k + n - 1.0));
    Wavefunction target = [](double, double) { return cplx{0.0}; };
    if (n > 0) {
      const TwoModeQuantumNumbers down =
          TwoModeQuantumNumbers::from_radial(n - 1, q.m());
      target = [down](double r, double a) { return ho_eigenfunction(down, r, a); };
    }
    out.push_back(eval("K- ladder", c, op_at(polar::Op::KMinus), scaled(c, target)));
  }

  const std::pair<polar::Op, const char*> singles[] = {
      {polar::Op::A, "a ladder"},
      {polar::Op::ADag, "a^dag ladder"},
      {polar::Op::B, "b ladder"},
      {polar::Op::BDag, "b^dag ladder"}};
  for (const auto& [op, name] : singles) {
    const auto image = ladder_image(op, q);
    Wavefunction target = [](double, double) { return cplx{0.0}; };
    double c = 0.0;
    if (image) {
      c = image->coefficient;
      const TwoModeQuantumNumbers t(image->total, image->m);
      target = [t](double r, double a) { return ho_eigenfunction(t, r, a); };
    }
    out.push_back(eval(name, c, op_at(op), scaled(c, target)));
  }
  return out;
}

}  // namespace su11
