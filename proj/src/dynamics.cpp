#include "su11/dynamics.hpp"

#include "su11/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace su11 {

Matrix hamiltonian_matrix(const TruncatedRep& rep, const Su11Hamiltonian& h) {
  const Matrix coupling = h.coupling() * rep.kplus();
  return h.f * rep.kzero() + coupling + coupling.adjoint();
}

TiltResult tilt_parameters(const Su11Hamiltonian& h) {
  if (!std::isfinite(h.f) || !std::isfinite(h.gamma) ||
      !std::isfinite(h.phase)) {
    throw std::invalid_argument("Hamiltonian coefficients must be finite");
  }
  if (h.gamma < 0.0) {
    throw std::invalid_argument("coupling gamma must be >= 0");
  }
  if (!(h.f > 2.0 * h.gamma)) {
    throw DomainError("above threshold: tilting undefined (need f > 2 gamma, f=" +
                      std::to_string(h.f) + ", gamma=" +
                      std::to_string(h.gamma) + ")");
  }
  TiltResult t;
  t.params = make_params(std::atanh(2.0 * h.gamma / h.f), h.phase);
  t.omega_eff = std::sqrt((h.f - 2.0 * h.gamma) * (h.f + 2.0 * h.gamma));
  return t;
}

double eigen_energy(BargmannIndex k, int n, const TiltResult& t) {
  return (n + k.value()) * t.omega_eff;
}

Matrix tilted_hamiltonian(const TruncatedRep& rep, const Su11Hamiltonian& h,
                          const DisplacementParams& p) {
  const Matrix d = displacement_normal_form(rep, p);
  return d.adjoint() * hamiltonian_matrix(rep, h) * d;
}

Eigen::VectorXd hamiltonian_spectrum(const TruncatedRep& rep,
                                     const Su11Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_matrix(rep, h),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

EigenResidual eigen_residual(BargmannIndex k, int n, const Su11Hamiltonian& h,
                             int dim, double tail_tol) {
  const TiltResult tilt = tilt_parameters(h);
  const TruncatedRep rep(k, dim);
  const PncsResult psi =
      pncs_series(k, n, tilt.params, dim, 1e-18, TruncationPolicy::Report);
  const Vector& v = psi.state.amplitudes();
  EigenResidual r;
  r.energy = eigen_energy(k, n, tilt);
  r.residual = (hamiltonian_matrix(rep, h) * v - r.energy * v).norm();
  r.tail_mass = psi.state.tail_mass();
  r.tail_warning = r.tail_mass > tail_tol;
  return r;
}

StateVector time_evolve(const PncsResult& state, double t,
                        const TiltResult& tilt, BargmannIndex k, int n) {
  if (params_distance(state.params, tilt.params) > 1e-12) {
    throw std::invalid_argument(
        "time_evolve: state was not built with the tilt parameters; the "
        "single-phase evolution only holds for the tilted eigenstates");
  }
  if (state.source_n != n || !(state.state.k() == k)) {
    throw std::invalid_argument("time_evolve: (k, n) do not match the state");
  }
  const cplx phase = std::polar(1.0, -tilt.omega_eff * (k.value() + n) * t);
  return StateVector(k, phase * state.state.amplitudes(),
                     state.state.tail_mass());
}

Vector evolve_dense(const TruncatedRep& rep, const Su11Hamiltonian& h,
                    const Vector& state, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_matrix(rep, h));
  const Matrix& vecs = solver.eigenvectors();
  const Eigen::VectorXd& vals = solver.eigenvalues();
  Vector coeffs = vecs.adjoint() * state;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -vals(i) * t);
  }
  return vecs * coeffs;
}

}  // namespace su11
