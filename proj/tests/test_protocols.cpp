#include <doctest.h>

#include <cmath>

#include "entangle/protocols.hpp"
#include "entangle/slocc.hpp"

using namespace entangle;
using doctest::Approx;

namespace {

double entropy_from_weights(const std::vector<double>& w) {
  double tot = 0.0, S = 0.0;
  for (double x : w) tot += x;
  for (double x : w)
    if (x > 0.0) S -= x / tot * std::log2(x / tot);
  return S;
}

}  // namespace

TEST_CASE("scattering amplitudes are normalised") {
  for (double t = 0.05; t <= M_PI / 2; t += 0.05) {
    const ScatterState s = scatter_amplitudes(t);
    CHECK(s.f_plus * s.f_plus + s.f_minus * s.f_minus == Approx(1.0));
    CHECK(scatter_state(t).norm() == Approx(1.0));
  }
  CHECK_THROWS_AS(scatter_amplitudes(0.0), ParameterError);
  CHECK_THROWS_AS(scatter_amplitudes(2.0), ParameterError);
}

TEST_CASE("scattering entropy grows towards right angles") {
  double prev = -1.0;
  for (double t = 0.05; t <= M_PI / 2 + 1e-12; t += 0.05) {
    const double S = scatter_entropy(t);
    CHECK(S > prev);
    CHECK(S == Approx(vn_entropy(partial_trace(projector(scatter_state(t)), {0}))));
    prev = S;
  }
  CHECK(scatter_entropy(M_PI / 2) == Approx(1.0));
}

TEST_CASE("correlator at right angles is the singlet correlator") {
  for (double a : {0.0, 0.4, 1.1})
    for (double b : {0.0, 0.9, 2.5}) CHECK(spin_correlator(M_PI / 2, a, b) == Approx(-std::cos(a - b)));
  CHECK(std::abs(spin_correlator(M_PI / 2, 0.0, M_PI / 3) - spin_correlator(M_PI / 2, 0.0, 2 * M_PI / 3)) == Approx(1.0));
}

TEST_CASE("bell function and critical angle") {
  CHECK(bell_F(M_PI / 2) == Approx(0.5));
  CHECK(bell_F(1e-4) == Approx(1.25));
  CHECK(critical_angle() == Approx(M_PI / 4).epsilon(1e-12));
  CHECK(bell_F(critical_angle()) == Approx(1.0));
}

TEST_CASE("tripartite scattering states") {
  const PureState sym = tripartite_scatter(1.0, 1.0, 1.0);
  CHECK(sym.norm() == Approx(1.0));
  const PureState anti = tripartite_scatter(1.0, -1.0, 1.0);
  for (const std::vector<int>& order : {std::vector<int>{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}) {
    CHECK((permute(sym, order).amps - sym.amps).norm() < 1e-14);
    CHECK((permute(anti, order).amps + anti.amps).norm() < 1e-14);
  }
  // Two particles in one level and one in the other give W-class qubit states for generic weights.
  for (const auto& w : {std::array<cplx, 3>{1.0, 0.3, 0.2}, {0.4, cplx(0.1, 0.5), -0.7}})
    CHECK(classify_three_qubit(tripartite_scatter(w[0], w[1], w[2], {0, 0, 1}, 2)).label == SloccLabel::W);
  CHECK_THROWS_AS(tripartite_scatter(1.0, 0.0, 0.0, {0, 1, 3}, 3), ParameterError);
}

TEST_CASE("two-atom spectrum") {
  for (int N = 2; N <= 8; ++N) {
    const PureState psi = two_atom_state(N);
    const SchmidtDecomposition d = schmidt_finite(psi, 1);
    const double tot = N * (N - 1.0);
    CHECK(d.lambdas(0) == Approx((N - 1.0) * (N - 1.0) / tot));
    for (int i = 1; i < N; ++i) CHECK(d.lambdas(i) == Approx(1.0 / tot));
    std::vector<double> w(N, 1.0);
    w[0] = (N - 1.0) * (N - 1.0);
    CHECK(two_atom_entropy(psi) == Approx(entropy_from_weights(w)));
    CHECK((filtered_two_atom_state(N, 1.0).amps - psi.amps).norm() < 1e-14);
  }
  CHECK_THROWS_AS(two_atom_state(1), ParameterError);
  CHECK_THROWS_AS(filtered_two_atom_state(3, 0.0), ParameterError);
}

TEST_CASE("filtering reaches maximal entanglement") {
  for (int N = 3; N <= 6; ++N) {
    const double pstar = 1.0 / (N - 1.0);
    CHECK(two_atom_entropy(filtered_two_atom_state(N, pstar)) == Approx(std::log2(N)));
    double best = 0.0, arg = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const double p = k / 200.0;
      const double S = two_atom_entropy(filtered_two_atom_state(N, p));
      if (S > best) best = S, arg = p;
    }
    CHECK(best <= std::log2(N) + 1e-12);
    CHECK(std::abs(arg - pstar) <= 0.005 + 1e-12);
  }
}
