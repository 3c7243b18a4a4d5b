#pragma once

#include <array>

#include "entangle/qudit_core.hpp"

namespace entangle {

// Spin-independent elastic scattering of two spin-1/2 particles at CM angle theta.
struct ScatterState {
  double theta = 0.0;
  double f_plus = 1.0;
  double f_minus = 0.0;
};

ScatterState scatter_amplitudes(double theta);
// f+ |ud> - f- |du> on two qubits.
PureState scatter_state(double theta);
double scatter_entropy(double theta);

// <(sigma.a)(x)(sigma.b)> for unit vectors in the x-z plane at polar angles a, b.
double spin_correlator(double theta, double angle_a, double angle_b);
double bell_F(double theta);
double critical_angle();

// Three particles with labels `labels` on `levels`-dimensional spins; channel weights
// f000 (identity), f2 (the three transpositions), f3 (the two 3-cycles).
PureState tripartite_scatter(cplx f000, cplx f2, cplx f3, std::array<int, 3> labels = {0, 1, 2}, int levels = 3);

// Two N-level atoms after one photon per level is detected: C_ij proportional to 1 - delta_ij.
PureState two_atom_state(int N);
// Same with the symmetric mode attenuated by absorption probability p.
PureState filtered_two_atom_state(int N, double p);
double two_atom_entropy(const PureState& psi);

}  // namespace entangle
