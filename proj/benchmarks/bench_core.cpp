#include <benchmark/benchmark.h>

#include <random>

#include "entangle/amplitudes.hpp"
#include "entangle/mps_cloning.hpp"
#include "entangle/rel_channels.hpp"

using namespace entangle;

namespace {

MatrixXc random_hermitian(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  MatrixXc A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
  return A + A.adjoint();
}

VectorXc random_state(int qubits) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  VectorXc v(1LL << qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

void BM_JacobiEigh(benchmark::State& state) {
  const MatrixXc A = random_hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigh(A));
}
BENCHMARK(BM_JacobiEigh)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_GaussHermite(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite(k));
}
BENCHMARK(BM_GaussHermite)->Arg(32)->Arg(128)->Arg(512);

void BM_PdcCoefficientMatrix(benchmark::State& state) {
  const int m0 = static_cast<int>(state.range(0));
  const BipartiteAmplitude f = pdc(2.135, 7.455);
  const QuadratureRule q = uniform_panel(-60.0, 60.0, 3000);
  OrthonormalBasis b;
  for (auto _ : state) benchmark::DoNotOptimize(coefficient_matrix(f, b, b, m0, m0, q, q));
}
BENCHMARK(BM_PdcCoefficientMatrix)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_VidalDecompose(benchmark::State& state) {
  const PureState psi(random_state(static_cast<int>(state.range(0))), std::vector<int>(state.range(0), 2));
  for (auto _ : state) benchmark::DoNotOptimize(vidal_decompose(psi));
}
BENCHMARK(BM_VidalDecompose)->DenseRange(4, 10, 2);

void BM_SequentialClone(benchmark::State& state) {
  const Eigen::Vector2cd psi = Eigen::Vector2cd(0.6, cplx(0.0, 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(sequential_clone(psi, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SequentialClone)->DenseRange(2, 5);

void BM_FermionNegativity(benchmark::State& state) {
  MagneticChannelParams ch;
  for (auto _ : state) benchmark::DoNotOptimize(fermion_negativity(ch));
}
BENCHMARK(BM_FermionNegativity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
