#pragma once

#include "su11/algebra.hpp"
#include "su11/displacement.hpp"

namespace su11 {

/// H = f K0 + g K+ + g* K-, with g = gamma e^{-i phase}.
struct Su11Hamiltonian {
  double f = 0.0;
  double gamma = 0.0;
  double phase = 0.0;

  cplx coupling() const noexcept { return std::polar(gamma, -phase); }
};

struct TiltResult {
  DisplacementParams params;
  double omega_eff = 0.0;  // sqrt(f^2 - 4 gamma^2)
};

/// Dense matrix of the Hamiltonian. Hermitian by construction: the K- term is
/// the adjoint of the K+ term.
Matrix hamiltonian_matrix(const TruncatedRep& rep, const Su11Hamiltonian& h);

/// tau = atanh(2 gamma / f), displacement phase = h.phase; D^dagger H D is
/// then omega_eff K0. Throws DomainError above threshold (f <= 2 gamma) and
/// std::invalid_argument for gamma < 0.
TiltResult tilt_parameters(const Su11Hamiltonian& h);

/// (n + k) omega_eff.
double eigen_energy(BargmannIndex k, int n, const TiltResult& t);

/// D^dagger H D with D from the normal form.
Matrix tilted_hamiltonian(const TruncatedRep& rep, const Su11Hamiltonian& h,
                          const DisplacementParams& p);

/// Ascending eigenvalues of the truncated Hamiltonian.
Eigen::VectorXd hamiltonian_spectrum(const TruncatedRep& rep,
                                     const Su11Hamiltonian& h);

struct EigenResidual {
  double residual = 0.0;  // |H psi - E psi| over the window
  double energy = 0.0;
  double tail_mass = 0.0;
  bool tail_warning = false;
};

/// Builds |zeta,k,n> with the tilt parameters of h and measures how far it
/// is from an eigenvector with eigenvalue (n+k) omega_eff.
EigenResidual eigen_residual(BargmannIndex k, int n, const Su11Hamiltonian& h,
                             int dim, double tail_tol = 1e-20);

/// e^{-i omega_eff (k+n) t} |state>, hbar = 1. Throws std::invalid_argument
/// when the state was not built with the tilt's displacement parameters.
StateVector time_evolve(const PncsResult& state, double t,
                        const TiltResult& tilt, BargmannIndex k, int n);

/// exp(-i H t)|state> through the eigendecomposition of the truncated H.
Vector evolve_dense(const TruncatedRep& rep, const Su11Hamiltonian& h,
                    const Vector& state, double t);

}  // namespace su11
