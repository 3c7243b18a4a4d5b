#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entangle/qudit_core.hpp"

namespace entangle {

enum class SloccLabel { Bipartite, C000, C01Psi, C02Psi, C03Psi, GHZ, W, FourQubit };

std::string to_string(SloccLabel l);

struct SloccClass {
  SloccLabel label = SloccLabel::C000;
  int bipartite_rank = 0;       // Bipartite(k)
  std::string structure;        // FourQubit tag
  std::vector<int> ranks;       // per-partition coefficient-matrix ranks
  std::vector<int> w_ranks;     // ranks of W1, W2 (when computed)
  std::vector<cplx> pencil_spectrum;  // eigenvalues of W1^{-1} W2 (when computed)
  double tolerance = 1e-8;

  std::string name() const;
};

struct SloccTolerances {
  double rank = 1e-8;        // relative singular-value threshold
  double ambiguity = 100.0;  // ratios in (rank, ambiguity*rank] are rejected as borderline
  double degeneracy = 1e-3;  // |l_a - l_b| <= degeneracy * max(1, |l_a|)
};

// Rank with the ambiguity band enforced; throws NumericalError carrying the borderline ratio.
int robust_rank(const MatrixXc& A, const SloccTolerances& tol);

SloccClass classify_bipartite(const PureState& psi, const SloccTolerances& tol = {});

struct WMatrices {
  Eigen::Matrix2cd W1, W2;
  int rank1 = 0, rank2 = 0;
};

// Right Schmidt vectors of the 1|23 cut reshaped into 2x2 matrices [w_j1 w_j2].
WMatrices w_matrices(const PureState& psi, const SloccTolerances& tol = {});

SloccClass classify_three_qubit(const PureState& psi, const SloccTolerances& tol = {});

struct ProjectivePoint {
  cplx alpha, beta;  // alpha w1 + beta w2 has rank one
};

// Product vectors in span{w1, w2} of C^2 (x) C^2: 0, 1 or 2 points, or empty if the pencil is all-product.
std::vector<ProjectivePoint> pencil_product_points(const Eigen::Vector4cd& w1, const Eigen::Vector4cd& w2,
                                                   double tol = 1e-8);

struct FourQubitReport {
  std::string tag;
  std::string generic_class;
  std::vector<std::string> exceptional;  // classes of exceptional pencil members
  int w_dim = 0;
};

FourQubitReport four_qubit_probe(const PureState& psi, const SloccTolerances& tol = {});

long long class_count_bound(long long M, long long N);

// Cayley hyperdeterminant of a three-qubit amplitude vector.
cplx hyperdeterminant(const VectorXc& a);

}  // namespace entangle
