#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entangle/rel_channels.hpp"

using namespace entangle;
using doctest::Approx;

namespace {

// Plane-wave matching for a square barrier of height set by k^2 = p^2 - 2 s m gB on [0, L].
std::pair<cplx, cplx> barrier_oracle(double p, double s, const MagneticChannelParams& ch) {
  const cplx i(0.0, 1.0);
  const cplx k = std::sqrt(cplx(p * p - 2.0 * s * ch.m * ch.gammaB0, 0.0));
  const double L = ch.L;
  // Unknowns r, A, B, t.
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  M << -1.0, 1.0, 1.0, 0.0,                                                         //
      i * p, i * k, -i * k, 0.0,                                                    //
      0.0, std::exp(i * k * L), std::exp(-i * k * L), -std::exp(i * p * L),         //
      0.0, i * k * std::exp(i * k * L), -i * k * std::exp(-i * k * L), -i * p * std::exp(i * p * L);
  rhs << 1.0, i * p, 0.0, 0.0;
  const Eigen::Vector4cd x = M.partialPivLu().solve(rhs);
  return {x(3), x(0)};
}

std::vector<double> sorted_eigs(const MatrixXc& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(A);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("wigner blocks reduce to matrix units without a boost") {
  for (int b = 0; b < 2; ++b)
    for (int k = 0; k < 2; ++k) {
      Eigen::Matrix2cd E = Eigen::Matrix2cd::Zero();
      E(b, k) = 1.0;
      CHECK((wigner_block(static_cast<Spin>(b), static_cast<Spin>(k), 1.0) - E).norm() < 1e-15);
    }
  CHECK_THROWS_AS(wigner_block(Spin::up, Spin::up, 0.0), ParameterError);
  CHECK_THROWS_AS(wigner_block(Spin::up, Spin::up, 1.5), ParameterError);
}

TEST_CASE("boost parameter") {
  CHECK(nz_prime({0.2, 0.0}) == 1.0);
  double prev = 1.0;
  for (double a = 0.5; a <= 10.0; a += 0.5) {
    const double n = nz_prime({0.3, a});
    CHECK(n < prev);
    prev = n;
  }
  CHECK(nz_prime({0.3, 60.0}) == Approx(1.0 - 0.15 * 0.15));
  CHECK_THROWS_AS(nz_prime({0.6, 1.0}), ParameterError);
  CHECK_THROWS_AS(nz_prime({0.2, -1.0}), ParameterError);
}

TEST_CASE("closed-form boosted werner matches the generic transformation") {
  for (double F : {0.0, 0.25, 0.5, 0.7, 1.0})
    for (double nz : {1.0, 0.99, 0.9, 0.6, 0.3}) {
      const DensityMatrix a = boosted_werner(F, nz);
      const DensityMatrix b = boost_two_qubit(coefficients_from_matrix(werner(F)), nz);
      CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-15);
      CHECK(a.matrix.trace().real() == Approx(1.0));
    }
  CHECK((boosted_werner(0.8, 1.0).matrix - MatrixXc(werner(0.8))).norm() < 1e-15);
}

TEST_CASE("werner singlet fidelity") {
  Eigen::Vector4cd singlet(0.0, 1.0, -1.0, 0.0);
  singlet /= std::sqrt(2.0);
  for (double F : {0.1, 0.5, 0.9}) CHECK((singlet.adjoint() * werner(F) * singlet)(0, 0).real() == Approx(F));
  CHECK_THROWS_AS(werner(1.2), ParameterError);
}

TEST_CASE("partial-transpose eigenvalues match numerical diagonalisation") {
  for (double F : {0.3, 0.55, 0.8, 1.0})
    for (double nz : {1.0, 0.8, 0.5}) {
      const std::vector<double> num = sorted_eigs(partial_transpose(boosted_werner(F, nz), 1));
      auto cf = ppt_eigenvalues(F, nz);
      std::vector<double> c(cf.begin(), cf.end());
      std::sort(c.begin(), c.end());
      for (int i = 0; i < 4; ++i) CHECK(num[i] == Approx(c[i]).epsilon(1e-12));
    }
}

TEST_CASE("distillability boundary separates entangled from separable") {
  CHECK(distill_boundary(1.0) == Approx(0.5));
  for (double nz : {1.0, 0.9, 0.7, 0.4}) {
    const double Fc = distill_boundary(nz);
    CHECK(negativity(boosted_werner(std::min(1.0, Fc + 1e-3), nz)) > 0.0);
    CHECK(negativity(boosted_werner(Fc - 1e-3, nz)) == Approx(0.0).scale(1.0));
  }
}

TEST_CASE("spin-momentum negativity") {
  CHECK(spinmom_negativity({0.3}) == Approx(1.0));
  CHECK(spinmom_negativity_bimodal(0.0, M_PI / 2) == Approx(0.0).scale(1.0));
  for (double d : {0.1, 0.7, 1.3}) CHECK(spinmom_negativity({0.2, 0.2 + d}) == Approx(spinmom_negativity_bimodal(0.2, 0.2 + d)));
  std::vector<double> th;
  for (int i = 0; i < 400; ++i) th.push_back(M_PI * i / 400.0);
  CHECK(spinmom_negativity(th) == Approx(0.0).scale(1.0));
  CHECK(spinmom_negativity_continuous({1.0, 3.0}, {0.0, 0.0}) == Approx(1.0));
  CHECK_THROWS_AS(spinmom_negativity_continuous({1.0}, {0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(spinmom_negativity_continuous({-1.0, 2.0}, {0.0, 1.0}), ParameterError);
}

TEST_CASE("barrier amplitudes match plane-wave matching") {
  MagneticChannelParams ch;
  ch.gammaB0 = 0.3;
  for (double p : {0.5, 3.0, 7.0, 7.745, 10.0, 25.0})
    for (double s : {0.5, -0.5}) {
      const auto [t, r] = barrier_oracle(p, s, ch);
      CHECK(std::abs(transmission(p, s, ch) - t) < 1e-11);
      CHECK(std::abs(reflection(p, s, ch) - r) < 1e-11);
      CHECK(std::norm(t) + std::norm(r) == Approx(1.0));
    }
  CHECK_THROWS_AS(transmission(-1.0, 0.5, ch), ParameterError);
  CHECK_THROWS_AS(transmission(1.0, 1.0, ch), ParameterError);
}

TEST_CASE("fermion negativity and no-signalling") {
  MagneticChannelParams ch;
  ch.gammaB0 = 0.0;
  CHECK(fermion_negativity(ch) == Approx(1.0));
  double prev = 1.0;
  for (double g : {0.1, 0.2, 0.4}) {
    ch.gammaB0 = g;
    const double n = fermion_negativity(ch);
    CHECK(n < prev);
    prev = n;
    const DensityMatrix bob = no_signalling_bob(ch);
    CHECK((bob.matrix - 0.5 * MatrixXc::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(fermion_negativity(ch, 8000) == Approx(fermion_negativity(ch, 4001)).epsilon(1e-10));
}

TEST_CASE("photon negativity") {
  OpticalChannelParams ch;
  ch.BtildeL = 0.0;
  // The analytic window fill replaces the packet by its value at the pole: O(window^3) error.
  CHECK(photon_negativity(ch) == Approx(1.0).epsilon(1e-7));
  ch.BtildeL = 1.0;
  // Wider packets sample less of the dispersive pole region.
  double prev = 0.0;
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    ch.sigma = s;
    const double n = photon_negativity(ch);
    CHECK(n > prev);
    prev = n;
  }
  ch.sigma = 2.0;
  const double ref = photon_negativity(ch);
  for (double w : {1e-2, 3e-3, 3e-4}) {
    ch.window = w;
    CHECK(std::abs(photon_negativity(ch) - ref) < 1e-4);
  }
  ch.window = 0.7;
  CHECK_THROWS_AS(photon_negativity(ch), ParameterError);
}
