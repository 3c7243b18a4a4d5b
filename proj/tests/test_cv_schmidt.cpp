#include <doctest.h>

#include <random>

#include "entangle/amplitudes.hpp"

using namespace entangle;
using doctest::Approx;

TEST_CASE("separable product of basis functions gives a unit coefficient") {
  const OrthonormalBasis b{1.0, 0.0};
  BipartiteAmplitude f;
  f.fn = [b](double p, double q) -> cplx { return b(0, p) * b(0, q); };
  const QuadratureRule q = gauss_hermite_scaled(60, 0.0, 1.0);
  const CoefficientMatrix C = coefficient_matrix(f, b, b, 6, 6, q);
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(C.entries(m, n) - (m == 0 && n == 0 ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("coefficient_matrix validates inputs") {
  const OrthonormalBasis b;
  const QuadratureRule q = gauss_hermite(10);
  CHECK_THROWS_AS(coefficient_matrix(gaussian_product(1, 1), b, b, 8, 8, q), ParameterError);
  CHECK_THROWS_AS(coefficient_matrix(gaussian_product(1, 1), b, b, 201, 1, gauss_hermite(500)), ParameterError);
  BipartiteAmplitude bad;
  bad.fn = [](double, double) -> cplx { return std::nan(""); };
  CHECK_THROWS_AS(coefficient_matrix(bad, b, b, 2, 2, q), NumericalError);
}

TEST_CASE("decompose small matrices") {
  MatrixXc I = MatrixXc::Identity(2, 2);
  SchmidtDecomposition d = decompose(I);
  CHECK(d.lambdas(0) == Approx(1.0));
  CHECK(d.lambdas(1) == Approx(1.0));
  MatrixXc D = MatrixXc::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 1.0;
  d = decompose(D);
  CHECK(d.lambdas(0) == Approx(4.0));
  CHECK(d.lambdas(1) == Approx(1.0));
  CHECK_THROWS_AS(decompose(MatrixXc::Zero(3, 3)), ParameterError);
}

TEST_CASE("rank-one matrix has a single mode") {
  VectorXc u(3), v(4);
  u << 1.0, cplx(0, 2), -1.0;
  v << 0.5, 1.0, cplx(1, 1), 0.0;
  const SchmidtDecomposition d = decompose(MatrixXc(u * v.adjoint()));
  REQUIRE(d.size() == 1);
  CHECK(d.lambdas(0) == Approx(u.squaredNorm() * v.squaredNorm()));
  CHECK(schmidt_number(d.lambdas) == Approx(1.0));
}

TEST_CASE("eigen route agrees with the svd oracle") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int s = 0; s < 20; ++s) {
    const int m = 2 + s % 29, n = 1 + (7 * s) % 30;
    MatrixXc C(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) C(i, j) = cplx(nd(rng), nd(rng));
    const SchmidtDecomposition a = decompose(C), b = decompose_svd(C);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a.lambdas(i) - b.lambdas(i)) < 1e-10 * std::max(1.0, b.lambdas(0)));
    // Biorthonormal modes reproduce C.
    const MatrixXc R = a.modeA1.transpose() * a.lambdas.cwiseSqrt().cast<cplx>().asDiagonal() * a.modeA2;
    CHECK((R - C).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.modeA2 * a.modeA2.adjoint() - MatrixXc::Identity(a.size(), a.size())).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("mode phase convention makes the first coefficient real positive") {
  MatrixXc C(2, 2);
  C << cplx(0, 1), 0.3, 0.1, cplx(0, -2);
  const SchmidtDecomposition d = decompose(C);
  for (int i = 0; i < d.size(); ++i) {
    Eigen::Index k = 0;
    while (std::abs(d.modeA1(i, k)) < 1e-12) ++k;
    CHECK(d.modeA1(i, k).imag() == Approx(0.0).scale(1.0));
    CHECK(d.modeA1(i, k).real() > 0.0);
  }
}

TEST_CASE("entropy and schmidt number") {
  Eigen::VectorXd l(1);
  l << 1.0;
  CHECK(entropy(l) == 0.0);
  CHECK(schmidt_number(l) == 1.0);
  Eigen::VectorXd h(2);
  h << 0.5, 0.5;
  CHECK(entropy(h) == Approx(1.0));
  CHECK(schmidt_number(h) == Approx(2.0));
  CHECK(entropy(Eigen::VectorXd::Constant(4, 0.25)) == Approx(2.0));
  Eigen::VectorXd a(2), b(2);
  a << 0.9, 0.1;
  b << 0.1, 0.9;
  CHECK(schmidt_number(a) == Approx(1.0 / 0.82));
  CHECK(entropy(a) == Approx(entropy(b)));
  Eigen::VectorXd un(2);
  un << 3.0, 3.0;  // renormalised
  CHECK(entropy(un) == Approx(1.0));
}

TEST_CASE("delta coefficients and truncated entropy") {
  CHECK(delta_coefficients(OrthonormalBasis{}, 5) == MatrixXc::Identity(6, 6));
  CHECK(truncated_delta_entropy(8) == 3.0);
  CHECK(truncated_delta_entropy(1) == 0.0);
  CHECK_THROWS_AS(truncated_delta_entropy(0), ParameterError);
}

TEST_CASE("gaussian product is separable") {
  const BipartiteAmplitude f = gaussian_product(1.0, 1.0);
  const OrthonormalBasis b{1.0 / std::sqrt(1.0), 0.0};
  const QuadratureRule q = gauss_hermite_scaled(60, 0.0, 1.0);
  const CoefficientMatrix C = coefficient_matrix(f, b, b, 10, 10, q);
  const SchmidtDecomposition d = decompose(C);
  CHECK(error_d2(C.norm2, d.lambdas) <= 1e-8);
  CHECK(entropy(d.lambdas) == Approx(0.0).scale(1.0));
  CHECK(error_d1(f, d, q, q) <= 1e-8);
}

TEST_CASE("parseval monotonicity on the biphoton amplitude") {
  const BipartiteAmplitude f = pdc(2.135, 7.455);
  const QuadratureRule q = uniform_panel(-40.0, 40.0, 1600);
  const OrthonormalBasis b{1.0, 0.0};
  const CoefficientMatrix C = coefficient_matrix(f, b, b, 20, 20, q);
  double prev = 0.0;
  for (int m = 0; m <= 20; m += 4) {
    const double s = truncate(C, m, m).entries.squaredNorm();
    CHECK(s >= prev);
    CHECK(s <= C.norm2 * (1 + 1e-6));
    prev = s;
  }
}

TEST_CASE("d1 tracks d2 on the biphoton amplitude") {
  const BipartiteAmplitude f = pdc(2.135, 7.455);
  const QuadratureRule q = uniform_panel(-40.0, 40.0, 1600);
  const OrthonormalBasis b{1.0, 0.0};
  double prev = 1.0;
  for (int m0 : {5, 10, 15, 20, 25}) {
    const CoefficientMatrix C = coefficient_matrix(f, b, b, m0, m0, q);
    const SchmidtDecomposition d = decompose(C);
    const double d1 = error_d1(f, d, q, q), d2 = error_d2(C.norm2, d.lambdas);
    CHECK(d1 < prev);
    if (m0 == 25) CHECK(std::abs(d1 - d2) <= 0.2 * d2);
    prev = d1;
  }
}

TEST_CASE("evaluate_mode reproduces a basis function") {
  MatrixXc C = MatrixXc::Zero(3, 3);
  C(2, 1) = 1.0;
  const OrthonormalBasis b{1.3, 0.2};
  const SchmidtDecomposition d = decompose(C, b, b);
  CHECK(std::abs(evaluate_mode(d, 1, 0, 0.7) - b(2, 0.7)) < 1e-14);
  CHECK(std::abs(evaluate_mode(d, 2, 0, -0.4) - b(1, -0.4)) < 1e-14);
  CHECK_THROWS_AS(evaluate_mode(d, 3, 0, 0.0), ParameterError);
  CHECK_THROWS_AS(evaluate_mode(d, 1, 1, 0.0), ParameterError);
}
