#pragma once

#include <vector>

#include "entangle/cv_schmidt.hpp"

namespace entangle {

// Subsystem 0 is the leftmost ket symbol and the slowest-varying index.
struct PureState {
  VectorXc amps;
  std::vector<int> dims;

  PureState() = default;
  PureState(VectorXc a, std::vector<int> d, bool normalize = true);

  int parties() const { return static_cast<int>(dims.size()); }
  double norm() const { return amps.norm(); }
};

struct DensityMatrix {
  MatrixXc matrix;
  std::vector<int> dims;

  DensityMatrix() = default;
  DensityMatrix(MatrixXc m, std::vector<int> d, bool validate = true);
};

// Product basis state from digits, e.g. ket({0,1,1}, {2,2,2}).
PureState ket(const std::vector<int>& digits, const std::vector<int>& dims);
// Qubit basis state from a bit string such as "011".
VectorXc ket_bits(const std::string& bits);

DensityMatrix projector(const PureState& psi);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
MatrixXc partial_transpose(const DensityMatrix& rho, int subsystem);
double negativity(const DensityMatrix& rho);
double vn_entropy(const DensityMatrix& rho);

// Schmidt decomposition across the cut {0..cut-1} | {cut..n-1}.
SchmidtDecomposition schmidt_finite(const PureState& psi, int cut);
// Coefficient matrix with the listed subsystems as rows (row-major within each block).
MatrixXc coefficient_matrix_partition(const PureState& psi, const std::vector<int>& first_block);

bool majorizes(std::vector<double> x, std::vector<double> y);

// Amplitude tensor reordered so that `order[k]` becomes position k.
PureState permute(const PureState& psi, const std::vector<int>& order);

}  // namespace entangle
