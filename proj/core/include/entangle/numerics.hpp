#pragma once

#include <vector>

#include "entangle/common.hpp"

namespace entangle {

enum class QuadratureKind { gauss_hermite, uniform_panel };

// Nodes ascending. For gauss_hermite, `weights` integrate against e^{-x^2} and
// `scaled_weights` = weights*e^{x^2} integrate plain functions; for panels both coincide.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
  QuadratureKind kind = QuadratureKind::uniform_panel;

  std::size_t size() const { return nodes.size(); }
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;  // descending
  MatrixXc eigenvectors;        // columns
};

struct SvdResult {
  MatrixXc U;              // left singular vectors (columns)
  Eigen::VectorXd sigma;   // descending
  MatrixXc V;              // right singular vectors (columns), A = U diag(sigma) V^dagger
};

// Physicists' Hermite polynomial H_n(x).
double hermite_eval(int n, double x);

// sqrt(beta) (sqrt(pi) 2^n n!)^{-1/2} H_n(beta x) e^{-(beta x)^2/2}; n <= 200.
double orthonormal_hermite(int n, double beta, double x);

// Values for n = 0..nmax written to out[0..nmax]; same scaling as orthonormal_hermite.
void orthonormal_hermite_all(int nmax, double beta, double x, double* out);

// Gauss-Hermite rule of order k (1 <= k <= 512), weight e^{-x^2}.
QuadratureRule gauss_hermite(int k);

// Gauss-Hermite rule mapped to x = c + s*y for integrands localised at width s.
QuadratureRule gauss_hermite_scaled(int k, double center, double scale);

// Composite trapezoid rule with n equispaced nodes on [a, b].
QuadratureRule uniform_panel(double a, double b, int n);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights);

// Hermitian eigensolver (cyclic complex Jacobi); rejects non-Hermitian input.
EigenDecomposition eigh(const MatrixXc& A);

// Singular value decomposition backed by Eigen's bidiagonal divide-and-conquer SVD.
SvdResult svd(const MatrixXc& A);

Eigen::VectorXd singular_values(const MatrixXc& A);

// Count of sigma_i > tol * sigma_1 (0 for the zero matrix).
int numerical_rank(const MatrixXc& A, double tol = 1e-8);

double log_factorial(int n);

}  // namespace entangle
