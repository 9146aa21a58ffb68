#include "generators.hpp"
#include "su11/dynamics.hpp"
#include "su11/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace su11;

TEST_CASE("Hamiltonian matrix is Hermitian and tridiagonal") {
  const TruncatedRep rep(BargmannIndex(1.5), 20);
  const Matrix h = hamiltonian_matrix(rep, Su11Hamiltonian{2.0, 0.7, 0.4});
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h(3, 0) == cplx{0.0, 0.0});
  CHECK(h(0, 0).real() == doctest::Approx(3.0));
  // g K+ sits below the diagonal with g = gamma e^{-i phase}.
  CHECK(std::abs(h(1, 0) - std::polar(0.7, -0.4) * std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("tilt parameters") {
  const TiltResult t = tilt_parameters(Su11Hamiltonian{2.0, 0.5, 0.0});
  CHECK(t.omega_eff == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(t.params.tau == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  const TiltResult flat = tilt_parameters(Su11Hamiltonian{2.0, 0.0, 0.0});
  CHECK(flat.params.is_identity());
  CHECK(flat.omega_eff == 2.0);
}

TEST_CASE("tilt failures") {
  CHECK_THROWS_AS(tilt_parameters(Su11Hamiltonian{2.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(tilt_parameters(Su11Hamiltonian{2.0, 1.5, 0.0}), DomainError);
  CHECK_THROWS_AS(tilt_parameters(Su11Hamiltonian{2.0, -0.1, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("lowest eigenvalue, f=2 gamma=1/2 k=1") {
  const TruncatedRep rep(BargmannIndex(1.0), 96);
  const Eigen::VectorXd e = hamiltonian_spectrum(rep, Su11Hamiltonian{2.0, 0.5, 0.0});
  CHECK(e(0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(e(1) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("tilted Hamiltonian is diagonal on the certified block") {
  for (const auto& [f, g] : {std::pair{2.0, 0.5}, {2.0, 0.8}, {3.0, 1.0}}) {
    const Su11Hamiltonian h{f, g, 0.6};
    const TiltResult t = tilt_parameters(h);
    const TruncatedRep rep(BargmannIndex(1.5), 128);
    Matrix m = tilted_hamiltonian(rep, h, t.params);
    const int block = certified_block(rep, t.params);
    REQUIRE(block > 10);
    for (int n = 0; n < block; ++n) {
      CHECK(m(n, n).real() == doctest::Approx(eigen_energy(rep.k(), n, t)).epsilon(1e-11));
    }
    m.diagonal().setZero();
    CHECK(max_abs_block(m, block) < 1e-9);
  }
}

TEST_CASE("spectrum matches (n+k) Omega over random couplings") {
  testing::Sampler gen(0x5eed07);
  for (int trial = 0; trial < 15; ++trial) {
    const double f = gen.uniform(1.0, 4.0);
    const double g = gen.uniform(0.0, 0.4 * f);
    const Su11Hamiltonian h{f, g, gen.uniform(0.0, 6.0)};
    const BargmannIndex k(gen.uniform(0.3, 3.0));
    const TruncatedRep rep(k, 128);
    const Eigen::VectorXd e = hamiltonian_spectrum(rep, h);
    const TiltResult t = tilt_parameters(h);
    INFO("f=" << f << " gamma=" << g << " k=" << k.value());
    for (int n = 0; n < 10; ++n) {
      CHECK(std::abs(e(n) - eigen_energy(k, n, t)) < 1e-7);
    }
  }
}

TEST_CASE("number coherent states are eigenvectors of the Hamiltonian") {
  for (int n = 0; n < 5; ++n) {
    const EigenResidual r =
        eigen_residual(BargmannIndex(1.0), n, Su11Hamiltonian{3.0, 1.0, 0.2}, 128);
    CHECK(r.residual < 1e-9);
    CHECK(r.energy == doctest::Approx((n + 1.0) * std::sqrt(5.0)).epsilon(1e-14));
    CHECK_FALSE(r.tail_warning);
  }
}

TEST_CASE("time evolution is a pure phase") {
  const BargmannIndex k(1.0);
  const Su11Hamiltonian h{2.0, 0.5, 0.0};
  const TiltResult t = tilt_parameters(h);
  const PncsResult psi = pncs_series(k, 0, t.params, 128);

  SUBCASE("t = 0 leaves the state unchanged") {
    const StateVector s = time_evolve(psi, 0.0, t, k, 0);
    CHECK((s.amplitudes() - psi.state.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("Omega = sqrt 3, k=1, n=0, t=1 against dense evolution") {
    const StateVector s = time_evolve(psi, 1.0, t, k, 0);
    const cplx overlap = inner_product(psi.state, s);
    CHECK(std::arg(overlap) == doctest::Approx(-1.7320508075688772).epsilon(1e-12));
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);

    const TruncatedRep rep(k, 128);
    const Vector dense = evolve_dense(rep, h, psi.state.amplitudes(), 1.0);
    CHECK((dense - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(std::arg(psi.state.amplitudes().dot(dense)) + std::sqrt(3.0)) < 1e-8);
  }
}

TEST_CASE("time evolution refuses foreign states") {
  const BargmannIndex k(1.0);
  const TiltResult t = tilt_parameters(Su11Hamiltonian{2.0, 0.5, 0.0});
  const PncsResult other = pncs_series(k, 0, make_params(0.3, 0.0), 64);
  CHECK_THROWS_AS(time_evolve(other, 1.0, t, k, 0), std::invalid_argument);
  const PncsResult mine = pncs_series(k, 0, t.params, 64);
  CHECK_THROWS_AS(time_evolve(mine, 1.0, t, k, 1), std::invalid_argument);
  CHECK_THROWS_AS(time_evolve(mine, 1.0, t, BargmannIndex(1.5), 0),
                  std::invalid_argument);
}
