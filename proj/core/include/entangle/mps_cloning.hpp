#pragma once

#include <array>
#include <vector>

#include "entangle/qudit_core.hpp"

namespace entangle {

// Vidal form c_{i1..in} = Gamma[1]^{i1} lambda[1] Gamma[2]^{i2} ... lambda[n-1] Gamma[n]^{in}.
// gammas[k][i] is a (chi_{k-1} x chi_k) matrix; boundary bonds have dimension 1.
struct MPS {
  std::vector<std::vector<MatrixXc>> gammas;
  std::vector<Eigen::VectorXd> lambdas;  // n-1 bond vectors, descending
  int chi = 1;

  int sites() const { return static_cast<int>(gammas.size()); }
};

MPS vidal_decompose(const PureState& psi, double tol = 1e-12);
PureState mps_reconstruct(const MPS& m);

// |n0 a, n1 b>_S: normalised symmetric state with n0 copies of a and n1 copies of b.
VectorXc symmetric_state(int n0, const Eigen::Vector2cd& a, int n1, const Eigen::Vector2cd& b);

double gm_alpha(int M, int j);
// Optimal universal 1 -> M clones followed by M-1 anticlones.
PureState gm_target(const Eigen::Vector2cd& psi, int M);
// Phase-covariant 1 -> M output for the equatorial qubit (|0> + e^{i phi}|1>)/sqrt(2), M odd.
PureState pcc_target(double phi, int M);

enum class CloneMode { universal, phase_covariant };

struct IsometrySet {
  std::vector<std::array<MatrixXc, 2>> V0;  // per step k: V0[k][i], D0 x D0
  int M = 0;
  int D0 = 0;
  int D = 0;  // ancilla dimension of the full protocol (2 D0)
  CloneMode mode = CloneMode::universal;
  std::vector<double> weights;  // alpha_j or gamma_j

  const MatrixXc& V1(int k, int i) const { return V0[k][1 - i]; }
  int steps() const { return static_cast<int>(V0.size()); }
};

// Sum of squared amplitudes N_{i up, j down} of the ancilla-free prefix (weights w_j).
double clone_N(int M, const std::vector<double>& w, int i, int j);

IsometrySet universal_isometries(int M);
IsometrySet phase_covariant_isometries(int M);

// max over steps of ||V^0+ V^0 + V^1+ V^1 - I||.
double isometry_residual(const IsometrySet& s);

// Qubit chain produced by V0 steps from |phi_I> = e1; returns amplitudes and the final ancilla state.
VectorXc apply_chain(const IsometrySet& s, int branch, VectorXc* phi_final = nullptr);

struct CloneBranch {
  double probability = 0.0;
  PureState output;
  double overlap = 0.0;  // |<target|output>|
};

struct CloneTrace {
  PureState target;
  CloneBranch branch[2];
  double residual = 0.0;
  int ancilla_dim = 0;
};

CloneTrace sequential_clone(const Eigen::Vector2cd& psi, int M, CloneMode mode = CloneMode::universal);

// <psi| rho_k |psi> for qubit k of a multi-qubit state.
double qubit_fidelity(const PureState& state, int k, const Eigen::Vector2cd& psi);

}  // namespace entangle
