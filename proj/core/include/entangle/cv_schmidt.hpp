#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entangle/numerics.hpp"

namespace entangle {

// Hermite-Gaussian family O_n(x) = sqrt(beta) h_n(beta (x - center)).
struct OrthonormalBasis {
  double beta = 1.0;
  double center = 0.0;
  std::string family = "hermite";

  double operator()(int n, double x) const;
  void eval_all(int nmax, double x, double* out) const;
};

struct Rect {
  double p_lo, p_hi, q_lo, q_hi;
};

enum class AmplitudeVariant { pdc, qed_t_channel, unstable, gaussian_product, delta_surrogate };

std::string to_string(AmplitudeVariant v);

struct BipartiteAmplitude {
  AmplitudeVariant variant = AmplitudeVariant::gaussian_product;
  std::vector<std::pair<std::string, double>> params;
  Rect domain{-10, 10, -10, 10};
  std::function<cplx(double, double)> fn;
  std::optional<double> exact_norm2;  // analytic ||f||^2 when known

  cplx operator()(double p, double q) const { return fn(p, q); }
  double param(const std::string& name) const;
};

// Samples f on the tensor grid of two rules (rows: p nodes, cols: q nodes).
MatrixXc sample_grid(const BipartiteAmplitude& f, const QuadratureRule& qp, const QuadratureRule& qq);

// ||f||^2 from the exact value if known, else by quadrature.
double norm2(const BipartiteAmplitude& f, const QuadratureRule& qp, const QuadratureRule& qq);

struct CoefficientMatrix {
  MatrixXc entries;
  int m0 = 0, n0 = 0;
  OrthonormalBasis basis1, basis2;
  double norm2 = 1.0;
};

struct SchmidtDecomposition {
  Eigen::VectorXd lambdas;  // descending
  MatrixXc modeA1;          // row i: coefficients of psi^(1)_i
  MatrixXc modeA2;          // row i: coefficients of psi^(2)_i
  OrthonormalBasis basis1, basis2;

  int size() const { return static_cast<int>(lambdas.size()); }
};

// Basis matrix B(n, k) = O_n(node_k), n = 0..nmax.
Eigen::MatrixXd basis_matrix(const OrthonormalBasis& b, int nmax, const QuadratureRule& q);

CoefficientMatrix coefficient_matrix(const BipartiteAmplitude& f, const OrthonormalBasis& b1,
                                     const OrthonormalBasis& b2, int m0, int n0,
                                     const QuadratureRule& qp, const QuadratureRule& qq);
CoefficientMatrix coefficient_matrix(const BipartiteAmplitude& f, const OrthonormalBasis& b1,
                                     const OrthonormalBasis& b2, int m0, int n0,
                                     const QuadratureRule& quad);
// Same, from a pre-sampled grid (shared across cutoffs / bases).
CoefficientMatrix coefficient_matrix_from_samples(const MatrixXc& samples, const OrthonormalBasis& b1,
                                                  const OrthonormalBasis& b2, int m0, int n0,
                                                  const QuadratureRule& qp, const QuadratureRule& qq,
                                                  double f_norm2);

// Leading (m0+1)x(n0+1) block of a larger coefficient matrix.
CoefficientMatrix truncate(const CoefficientMatrix& C, int m0, int n0);

// Diagonalises M = C C^dagger; first nonzero coefficient of each psi^(1)_i made real-positive.
SchmidtDecomposition decompose(const CoefficientMatrix& C);
SchmidtDecomposition decompose(const MatrixXc& C, const OrthonormalBasis& b1 = {},
                               const OrthonormalBasis& b2 = {});
// Oracle route through svd(C); same conventions.
SchmidtDecomposition decompose_svd(const MatrixXc& C, const OrthonormalBasis& b1 = {},
                                   const OrthonormalBasis& b2 = {});

cplx evaluate_mode(const SchmidtDecomposition& d, int side, int i, double x);

// Direct quadrature of ||f - f_K||^2 / ||f||^2.
double error_d1(const BipartiteAmplitude& f, const SchmidtDecomposition& d, const QuadratureRule& qp,
                const QuadratureRule& qq, std::optional<double> f_norm2 = std::nullopt);

double error_d2(double f_norm2, const Eigen::VectorXd& lambdas);

double entropy(const Eigen::VectorXd& lambdas);
double schmidt_number(const Eigen::VectorXd& lambdas);

MatrixXc delta_coefficients(const OrthonormalBasis& basis, int n);
double truncated_delta_entropy(long long N);

}  // namespace entangle
