#include "entangle/protocols.hpp"

#include <cmath>

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_theta(double theta) { require(theta > 0.0 && theta <= 0.5 * kPi + 1e-15, "theta must lie in (0, pi/2]"); }

}  // namespace

ScatterState scatter_amplitudes(double theta) {
  check_theta(theta);
  const double c = std::cos(theta);
  const double n = std::sqrt(2.0 * (1.0 + c * c));
  return {theta, (1.0 + c) / n, (1.0 - c) / n};
}

PureState scatter_state(double theta) {
  const ScatterState s = scatter_amplitudes(theta);
  VectorXc v = VectorXc::Zero(4);
  v(1) = s.f_plus;
  v(2) = -s.f_minus;
  return PureState(v, {2, 2}, false);
}

double scatter_entropy(double theta) {
  const ScatterState s = scatter_amplitudes(theta);
  double S = 0.0;
  for (double f : {s.f_plus, s.f_minus}) {
    const double w = f * f;
    if (w > 0.0) S -= w * std::log2(w);
  }
  return S;
}

double spin_correlator(double theta, double angle_a, double angle_b) {
  const PureState psi = scatter_state(theta);
  auto sigma = [](double a) {
    Eigen::Matrix2cd s;
    s << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
    return s;
  };
  const Eigen::Matrix2cd A = sigma(angle_a), B = sigma(angle_b);
  Eigen::Matrix4cd AB;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) AB.block<2, 2>(2 * i, 2 * j) = A(i, j) * B;
  return (psi.amps.adjoint() * AB * psi.amps)(0, 0).real();
}

double bell_F(double theta) {
  check_theta(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  return 1.25 - 0.75 * (1.0 - c2) / (1.0 + c2);
}

double critical_angle() {
  double lo = 1e-6, hi = 0.5 * kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bell_F(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PureState tripartite_scatter(cplx f000, cplx f2, cplx f3, std::array<int, 3> labels, int levels) {
  require(levels >= 2, "tripartite_scatter: need at least two levels");
  for (int l : labels) require(l >= 0 && l < levels, "tripartite_scatter: label out of range");
  static const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const cplx w[6] = {f000, f2, f2, f2, f3, f3};
  VectorXc v = VectorXc::Zero(levels * levels * levels);
  for (int k = 0; k < 6; ++k) {
    const int* pi = perms[k];
    v((labels[pi[0]] * levels + labels[pi[1]]) * levels + labels[pi[2]]) += w[k];
  }
  require(v.norm() > 0.0, "tripartite_scatter: all channel weights vanish");
  return PureState(v, {levels, levels, levels});
}

PureState two_atom_state(int N) { return filtered_two_atom_state(N, 1.0); }

PureState filtered_two_atom_state(int N, double p) {
  require(N >= 2, "two_atom_state: N must be at least 2");
  require(p > 0.0 && p <= 1.0, "filtered_two_atom_state: p must lie in (0, 1]");
  // J - I = (N-1) u u^T - (I - u u^T) with u the symmetric mode; only the u component is attenuated.
  const Eigen::MatrixXd J = Eigen::MatrixXd::Constant(N, N, 1.0 / N);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd C = p * (N - 1.0) * J - (I - J);
  VectorXc v(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v(i * N + j) = C(i, j);
  return PureState(v, {N, N});
}

double two_atom_entropy(const PureState& psi) {
  require(psi.parties() == 2, "two_atom_entropy: need a bipartite state");
  return entropy(schmidt_finite(psi, 1).lambdas);
}

}  // namespace entangle
