#include <doctest.h>

#include <cmath>
#include <random>

#include "entangle/qudit_core.hpp"

using namespace entangle;
using doctest::Approx;

namespace {

VectorXc random_vector(std::mt19937_64& rng, long long n) {
  std::normal_distribution<double> nd;
  VectorXc v(n);
  for (long long i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v.normalized();
}

PureState bell() {
  VectorXc v = ket_bits("00") + ket_bits("11");
  return PureState(v, {2, 2});
}

}  // namespace

TEST_CASE("state construction validates dimensions") {
  CHECK_THROWS_AS(PureState(VectorXc::Ones(3), {2, 2}), ParameterError);
  CHECK_THROWS_AS(PureState(VectorXc::Zero(4), {2, 2}), ParameterError);
  CHECK(PureState(VectorXc::Ones(4), {2, 2}).norm() == Approx(1.0));
  MatrixXc nh = MatrixXc::Zero(2, 2);
  nh(0, 1) = 1.0;
  nh(0, 0) = 1.0;
  CHECK_THROWS_AS(DensityMatrix(nh, {2}), ParameterError);
  CHECK_THROWS_AS(DensityMatrix(2.0 * MatrixXc::Identity(2, 2), {2}), ParameterError);
}

TEST_CASE("kets and tensor products") {
  const PureState k = ket({1, 0, 2}, {2, 2, 3});
  CHECK(k.amps(1 * 6 + 0 * 3 + 2) == cplx(1.0));
  CHECK(ket_bits("011")(3) == cplx(1.0));
  CHECK_THROWS_AS(ket_bits("012"), ParameterError);
  const PureState t = tensor(ket({1}, {2}), ket({0, 1}, {2, 2}));
  CHECK(t.amps(4 + 1) == cplx(1.0));
  CHECK(t.dims == std::vector<int>{2, 2, 2});
}

TEST_CASE("partial trace of a bell state is maximally mixed") {
  const DensityMatrix r = partial_trace(projector(bell()), {0});
  CHECK((r.matrix - 0.5 * MatrixXc::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(vn_entropy(r) == Approx(1.0));
  CHECK_THROWS_AS(partial_trace(projector(bell()), {0, 0}), ParameterError);
  CHECK_THROWS_AS(partial_trace(projector(bell()), {2}), ParameterError);
}

TEST_CASE("partial trace of a product state recovers the factors") {
  std::mt19937_64 rng(4);
  const PureState a(random_vector(rng, 3), {3}), b(random_vector(rng, 2), {2});
  const DensityMatrix rho = projector(tensor(a, b));
  CHECK((partial_trace(rho, {0}).matrix - projector(a).matrix).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((partial_trace(rho, {1}).matrix - projector(b).matrix).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial transpose and negativity") {
  CHECK(negativity(projector(bell())) == Approx(1.0));
  CHECK(negativity(projector(tensor(ket({0}, {2}), ket({1}, {2})))) == Approx(0.0).scale(1.0));
  // Werner-type mixture p |Phi+><Phi+| + (1-p) I/4: negativity max(0, (3p-1)/2).
  for (double p : {0.2, 1.0 / 3, 0.6, 0.9}) {
    const MatrixXc m = p * projector(bell()).matrix + (1 - p) * 0.25 * MatrixXc::Identity(4, 4);
    CHECK(negativity(DensityMatrix(m, {2, 2})) == Approx(std::max(0.0, (3 * p - 1) / 2)).scale(1.0));
  }
  const MatrixXc pt = partial_transpose(projector(bell()), 1);
  CHECK(pt(1, 2) == cplx(0.5));
}

TEST_CASE("entropy of maximally mixed states and pure states") {
  CHECK(vn_entropy(DensityMatrix(MatrixXc::Identity(4, 4) / 4.0, {4})) == Approx(2.0));
  CHECK(vn_entropy(projector(bell())) == Approx(0.0).scale(1.0));
}

TEST_CASE("finite schmidt decomposition matches singular values") {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 50; ++s) {
    const int a = 1 + s % 8, b = 1 + (3 * s) % 8;
    const PureState psi(random_vector(rng, a * b), {a, b});
    const SchmidtDecomposition d = schmidt_finite(psi, 1);
    const Eigen::VectorXd sv = singular_values(coefficient_matrix_partition(psi, {0}));
    for (int i = 0; i < d.size(); ++i) CHECK(std::abs(d.lambdas(i) - sv(i) * sv(i)) < 1e-10);
    CHECK(d.lambdas.sum() == Approx(1.0));
  }
  CHECK_THROWS_AS(schmidt_finite(bell(), 0), ParameterError);
}

TEST_CASE("coefficient matrix partitions") {
  const VectorXc v = ket_bits("001") + ket_bits("010");
  const PureState psi(v, {2, 2, 2});
  CHECK(numerical_rank(coefficient_matrix_partition(psi, {0})) == 1);
  CHECK(numerical_rank(coefficient_matrix_partition(psi, {1})) == 2);
  CHECK(numerical_rank(coefficient_matrix_partition(psi, {2})) == 2);
  CHECK_THROWS_AS(coefficient_matrix_partition(psi, {0, 1, 2}), ParameterError);
}

TEST_CASE("majorization") {
  CHECK(majorizes({0.5, 0.5}, {1.0, 0.0}));
  CHECK_FALSE(majorizes({1.0, 0.0}, {0.5, 0.5}));
  CHECK(majorizes({0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}));
  CHECK_THROWS_AS(majorizes({1.0}, {0.5, 0.5}), ParameterError);
}

TEST_CASE("permutation of subsystems") {
  const PureState psi(ket_bits("011"), {2, 2, 2});
  const PureState p = permute(psi, {2, 0, 1});
  CHECK(p.amps(0b101) == cplx(1.0));
  CHECK_THROWS_AS(permute(psi, {0, 1}), ParameterError);
}
