#include "entangle/cv_schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace entangle {

double OrthonormalBasis::operator()(int n, double x) const { return orthonormal_hermite(n, beta, x - center); }

void OrthonormalBasis::eval_all(int nmax, double x, double* out) const {
  orthonormal_hermite_all(nmax, beta, x - center, out);
}

std::string to_string(AmplitudeVariant v) {
  switch (v) {
    case AmplitudeVariant::pdc: return "pdc";
    case AmplitudeVariant::qed_t_channel: return "qed_t_channel";
    case AmplitudeVariant::unstable: return "unstable";
    case AmplitudeVariant::gaussian_product: return "gaussian_product";
    case AmplitudeVariant::delta_surrogate: return "delta_surrogate";
  }
  return "unknown";
}

double BipartiteAmplitude::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw ParameterError("amplitude has no parameter '" + name + "'");
}

MatrixXc sample_grid(const BipartiteAmplitude& f, const QuadratureRule& qp, const QuadratureRule& qq) {
  const Eigen::Index np = static_cast<Eigen::Index>(qp.size()), nq = static_cast<Eigen::Index>(qq.size());
  MatrixXc F(np, nq);
  for (Eigen::Index j = 0; j < nq; ++j) {
    for (Eigen::Index i = 0; i < np; ++i) {
      const cplx v = f(qp.nodes[i], qq.nodes[j]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalError("amplitude returned a non-finite sample");
      F(i, j) = v;
    }
  }
  return F;
}

namespace {

Eigen::VectorXd scaled_weights(const QuadratureRule& q) {
  return Eigen::Map<const Eigen::VectorXd>(q.scaled_weights.data(), static_cast<Eigen::Index>(q.size()));
}

double grid_norm2(const MatrixXc& F, const QuadratureRule& qp, const QuadratureRule& qq) {
  const Eigen::VectorXd wp = scaled_weights(qp), wq = scaled_weights(qq);
  return (wp.transpose() * F.cwiseAbs2() * wq)(0, 0);
}

void fix_phase(Eigen::RowVectorXcd& row) {
  const double top = row.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < row.size(); ++k) {
    if (std::abs(row(k)) > 1e-12 * top) {
      row *= std::conj(row(k)) / std::abs(row(k));
      return;
    }
  }
}

SchmidtDecomposition assemble(const MatrixXc& C, const Eigen::VectorXd& lam_all, const MatrixXc& U,
                              const OrthonormalBasis& b1, const OrthonormalBasis& b2) {
  if (lam_all.size() == 0 || lam_all(0) <= 0.0) throw ParameterError("decompose: coefficient matrix is zero");
  int keep = 0;
  while (keep < lam_all.size() && lam_all(keep) >= 1e-14 * lam_all(0)) ++keep;
  SchmidtDecomposition d;
  d.basis1 = b1;
  d.basis2 = b2;
  d.lambdas = lam_all.head(keep);
  d.modeA1.resize(keep, C.rows());
  d.modeA2.resize(keep, C.cols());
  for (int i = 0; i < keep; ++i) {
    Eigen::RowVectorXcd r = U.col(i).transpose();
    fix_phase(r);
    d.modeA1.row(i) = r;
    d.modeA2.row(i) = (d.modeA1.row(i).conjugate() * C) / std::sqrt(d.lambdas(i));
  }
  return d;
}

}  // namespace

double norm2(const BipartiteAmplitude& f, const QuadratureRule& qp, const QuadratureRule& qq) {
  if (f.exact_norm2) return *f.exact_norm2;
  return grid_norm2(sample_grid(f, qp, qq), qp, qq);
}

Eigen::MatrixXd basis_matrix(const OrthonormalBasis& b, int nmax, const QuadratureRule& q) {
  Eigen::MatrixXd B(nmax + 1, static_cast<Eigen::Index>(q.size()));
  std::vector<double> tmp(nmax + 1);
  for (std::size_t k = 0; k < q.size(); ++k) {
    b.eval_all(nmax, q.nodes[k], tmp.data());
    for (int n = 0; n <= nmax; ++n) B(n, static_cast<Eigen::Index>(k)) = tmp[n];
  }
  return B;
}

CoefficientMatrix coefficient_matrix_from_samples(const MatrixXc& F, const OrthonormalBasis& b1,
                                                  const OrthonormalBasis& b2, int m0, int n0,
                                                  const QuadratureRule& qp, const QuadratureRule& qq,
                                                  double f_norm2) {
  require(m0 >= 0 && n0 >= 0 && m0 <= 200 && n0 <= 200, "coefficient_matrix: cutoffs must lie in [0, 200]");
  const std::size_t need = static_cast<std::size_t>(std::max(1, 2 * std::max(m0, n0)));
  if (qp.size() < need || qq.size() < need)
    throw ParameterError("coefficient_matrix: quadrature order below 2*max(m0, n0)");
  require(F.rows() == static_cast<Eigen::Index>(qp.size()) && F.cols() == static_cast<Eigen::Index>(qq.size()),
          "coefficient_matrix: sample grid shape mismatch");
  const Eigen::MatrixXd Bp = basis_matrix(b1, m0, qp) * scaled_weights(qp).asDiagonal();
  const Eigen::MatrixXd Bq = basis_matrix(b2, n0, qq) * scaled_weights(qq).asDiagonal();
  CoefficientMatrix C;
  C.entries = Bp.cast<cplx>() * F * Bq.transpose().cast<cplx>();
  if (!C.entries.allFinite()) throw NumericalError("coefficient_matrix: non-finite coefficients");
  C.m0 = m0;
  C.n0 = n0;
  C.basis1 = b1;
  C.basis2 = b2;
  C.norm2 = f_norm2;
  return C;
}

CoefficientMatrix coefficient_matrix(const BipartiteAmplitude& f, const OrthonormalBasis& b1,
                                     const OrthonormalBasis& b2, int m0, int n0,
                                     const QuadratureRule& qp, const QuadratureRule& qq) {
  const MatrixXc F = sample_grid(f, qp, qq);
  const double nrm = f.exact_norm2 ? *f.exact_norm2 : grid_norm2(F, qp, qq);
  return coefficient_matrix_from_samples(F, b1, b2, m0, n0, qp, qq, nrm);
}

CoefficientMatrix coefficient_matrix(const BipartiteAmplitude& f, const OrthonormalBasis& b1,
                                     const OrthonormalBasis& b2, int m0, int n0,
                                     const QuadratureRule& quad) {
  return coefficient_matrix(f, b1, b2, m0, n0, quad, quad);
}

CoefficientMatrix truncate(const CoefficientMatrix& C, int m0, int n0) {
  require(m0 <= C.m0 && n0 <= C.n0 && m0 >= 0 && n0 >= 0, "truncate: cutoffs exceed source matrix");
  CoefficientMatrix out = C;
  out.entries = C.entries.topLeftCorner(m0 + 1, n0 + 1);
  out.m0 = m0;
  out.n0 = n0;
  return out;
}

SchmidtDecomposition decompose(const MatrixXc& C, const OrthonormalBasis& b1, const OrthonormalBasis& b2) {
  if (C.size() == 0 || C.cwiseAbs().maxCoeff() == 0.0) throw ParameterError("decompose: coefficient matrix is zero");
  const MatrixXc M = C * C.adjoint();
  const EigenDecomposition e = eigh(M);
  return assemble(C, e.eigenvalues.cwiseMax(0.0), e.eigenvectors, b1, b2);
}

SchmidtDecomposition decompose(const CoefficientMatrix& C) { return decompose(C.entries, C.basis1, C.basis2); }

SchmidtDecomposition decompose_svd(const MatrixXc& C, const OrthonormalBasis& b1, const OrthonormalBasis& b2) {
  if (C.size() == 0 || C.cwiseAbs().maxCoeff() == 0.0) throw ParameterError("decompose: coefficient matrix is zero");
  const SvdResult s = svd(C);
  return assemble(C, s.sigma.cwiseAbs2(), s.U, b1, b2);
}

cplx evaluate_mode(const SchmidtDecomposition& d, int side, int i, double x) {
  require(side == 1 || side == 2, "evaluate_mode: side must be 1 or 2");
  require(i >= 0 && i < d.size(), "evaluate_mode: mode index out of range");
  const MatrixXc& A = side == 1 ? d.modeA1 : d.modeA2;
  const OrthonormalBasis& b = side == 1 ? d.basis1 : d.basis2;
  const int nmax = static_cast<int>(A.cols()) - 1;
  std::vector<double> o(nmax + 1);
  b.eval_all(nmax, x, o.data());
  cplx s = 0.0;
  for (int n = 0; n <= nmax; ++n) s += A(i, n) * o[n];
  return s;
}

double error_d1(const BipartiteAmplitude& f, const SchmidtDecomposition& d, const QuadratureRule& qp,
                const QuadratureRule& qq, std::optional<double> f_norm2) {
  const MatrixXc F = sample_grid(f, qp, qq);
  const double nrm = f_norm2 ? *f_norm2 : (f.exact_norm2 ? *f.exact_norm2 : grid_norm2(F, qp, qq));
  const int m0 = static_cast<int>(d.modeA1.cols()) - 1, n0 = static_cast<int>(d.modeA2.cols()) - 1;
  const MatrixXc K = d.modeA1.transpose() * d.lambdas.cwiseSqrt().cast<cplx>().asDiagonal() * d.modeA2;
  const Eigen::MatrixXd Bp = basis_matrix(d.basis1, m0, qp), Bq = basis_matrix(d.basis2, n0, qq);
  const MatrixXc FK = Bp.transpose().cast<cplx>() * K * Bq.cast<cplx>();
  const Eigen::VectorXd wp = scaled_weights(qp), wq = scaled_weights(qq);
  const double cross = (wp.transpose().cast<cplx>() * FK.conjugate().cwiseProduct(F) * wq.cast<cplx>())(0, 0).real();
  const double fk2 = (wp.transpose() * FK.cwiseAbs2() * wq)(0, 0);
  return std::max(0.0, (nrm - 2.0 * cross + fk2) / nrm);
}

double error_d2(double f_norm2, const Eigen::VectorXd& lambdas) {
  require(f_norm2 > 0.0, "error_d2: norm must be positive");
  return 1.0 - lambdas.sum() / f_norm2;
}

namespace {

Eigen::VectorXd normalized(const Eigen::VectorXd& lambdas) {
  require(lambdas.size() > 0, "empty Schmidt spectrum");
  require((lambdas.array() >= -1e-12).all(), "Schmidt weights must be nonnegative");
  const double s = lambdas.sum();
  require(s > 0.0, "Schmidt weights sum to zero");
  return lambdas.cwiseMax(0.0) / s;
}

}  // namespace

double entropy(const Eigen::VectorXd& lambdas) {
  const Eigen::VectorXd l = normalized(lambdas);
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i)
    if (l(i) > 0.0) s -= l(i) * std::log2(l(i));
  return std::max(0.0, s);
}

double schmidt_number(const Eigen::VectorXd& lambdas) {
  const Eigen::VectorXd l = normalized(lambdas);
  return 1.0 / l.squaredNorm();
}

MatrixXc delta_coefficients(const OrthonormalBasis& basis, int n) {
  require(basis.family == "hermite", "delta_coefficients: basis must be real-valued");
  require(n >= 0, "delta_coefficients: cutoff must be nonnegative");
  return MatrixXc::Identity(n + 1, n + 1);
}

double truncated_delta_entropy(long long N) {
  require(N >= 1, "truncated_delta_entropy: N must be positive");
  return std::log2(static_cast<double>(N));
}

}  // namespace entangle
