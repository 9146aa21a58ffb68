#include "generators.hpp"
#include "su11/algebra.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace su11;

TEST_CASE("Bargmann index rejects non-positive and non-finite values") {
  CHECK_THROWS_AS(BargmannIndex(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BargmannIndex(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(BargmannIndex(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK_THROWS_AS(BargmannIndex(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK(BargmannIndex(0.25).value() == 0.25);
}

TEST_CASE("guard band is max(4, dim/8)") {
  CHECK(guard_band(8) == 4);
  CHECK(guard_band(32) == 4);
  CHECK(guard_band(64) == 8);
  CHECK(guard_band(128) == 16);
  CHECK(guard_band(160) == 20);
}

TEST_CASE("window smaller than two levels is rejected") {
  CHECK_THROWS_AS(TruncatedRep(BargmannIndex(1.0), 1), std::invalid_argument);
}

TEST_CASE("ladder matrix entries") {
  const TruncatedRep rep(BargmannIndex(1.5), 16);
  for (int n = 0; n + 1 < 16; ++n) {
    CHECK(rep.kplus()(n + 1, n).real() ==
          doctest::Approx(std::sqrt((n + 1.0) * (3.0 + n))).epsilon(1e-15));
    CHECK(rep.kplus()(n, n + 1) == cplx{0.0, 0.0});
  }
  for (int n = 0; n < 16; ++n) CHECK(rep.kzero()(n, n).real() == 1.5 + n);
}

TEST_CASE("K- is the exact adjoint of K+") {
  for (double k : {0.5, 1.0, 2.3}) {
    const TruncatedRep rep(BargmannIndex(k), 40);
    CHECK((rep.kminus() - rep.kplus().adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("commutator of the lowering and raising generators, k=1 dim=64") {
  const TruncatedRep rep(BargmannIndex(1.0), 64);
  const Matrix c = commutator(rep.kminus(), rep.kplus()) - 2.0 * rep.kzero();
  CHECK(max_abs_block(c, rep.interior()) < 1e-12);
  // The top level is where the cut shows up.
  CHECK(std::abs(c(63, 63)) > 1.0);
}

TEST_CASE("closure on the interior block over random (k, dim)") {
  testing::Sampler gen(0x5eed01);
  for (int trial = 0; trial < 40; ++trial) {
    const double k = gen.uniform(0.1, 3.0);
    const int dim = gen.integer(8, 48);
    const TruncatedRep rep(BargmannIndex(k), dim);
    const ClosureResiduals r = closure_residuals(rep.kplus(), rep.kminus(),
                                                 rep.kzero(), rep.interior());
    INFO("k=" << k << " dim=" << dim);
    CHECK(r.max() < 1e-12);
  }
}

TEST_CASE("Casimir on the interior block") {
  SUBCASE("k = 3/4 gives -3/16") {
    const TruncatedRep rep(BargmannIndex(0.75), 24);
    const Matrix c = casimir(rep);
    CHECK(c(5, 5).real() == doctest::Approx(-3.0 / 16.0).epsilon(1e-14));
  }
  SUBCASE("k = 1 gives 0") {
    const TruncatedRep rep(BargmannIndex(1.0), 24);
    CHECK(max_abs_block(casimir(rep), rep.interior()) < 1e-12);
  }
  SUBCASE("k = 0.3, dim 32 gives -0.21") {
    const TruncatedRep rep(BargmannIndex(0.3), 32);
    const Matrix dev = casimir(rep) + 0.21 * Matrix::Identity(32, 32);
    CHECK(max_abs_block(dev, rep.interior()) < 1e-12);
  }
}

TEST_CASE("generator action on basis states") {
  const BargmannIndex k(1.5);
  const StateVector s = StateVector::basis(k, 10, 3);
  const StateVector up = apply_raising(s);
  CHECK(up[4].real() == doctest::Approx(std::sqrt(4.0 * 6.0)).epsilon(1e-15));
  CHECK(up.norm2() == doctest::Approx(24.0).epsilon(1e-14));
  const StateVector down = apply_lowering(s);
  CHECK(down[2].real() == doctest::Approx(std::sqrt(3.0 * 5.0)).epsilon(1e-15));
  const StateVector z = apply_kzero(s);
  CHECK(z[3].real() == doctest::Approx(4.5));
  CHECK(apply_lowering(StateVector::basis(k, 10, 0)).norm2() == 0.0);
}

TEST_CASE("raising off the top level is booked as tail mass") {
  const BargmannIndex k(1.0);
  const StateVector top = StateVector::basis(k, 6, 5);
  const StateVector up = apply_raising(top);
  CHECK(up.norm2() == 0.0);
  CHECK(up.tail_mass() == doctest::Approx(6.0 * 7.0));
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
  const BargmannIndex k(1.0);
  Vector a(3), b(3);
  a << cplx{0, 1}, 0, 0;
  b << 1, 0, 0;
  const cplx ip = inner_product(StateVector(k, a), StateVector(k, b));
  CHECK(ip.imag() == doctest::Approx(-1.0));
}

TEST_CASE("inner product rejects mismatched states") {
  const StateVector a = StateVector::basis(BargmannIndex(1.0), 4, 0);
  const StateVector b = StateVector::basis(BargmannIndex(1.5), 4, 0);
  const StateVector c = StateVector::basis(BargmannIndex(1.0), 5, 0);
  CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
  CHECK_THROWS_AS(inner_product(a, c), std::invalid_argument);
}

TEST_CASE("guard mass sums the top levels") {
  Vector v = Vector::Zero(8);
  v(7) = 0.5;
  v(6) = 0.5;
  v(0) = 1.0;
  const StateVector s(BargmannIndex(1.0), v);
  CHECK(s.guard_mass(2) == doctest::Approx(0.5));
  CHECK(s.guard_mass(1) == doctest::Approx(0.25));
}
