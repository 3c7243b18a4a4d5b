#include "entangle/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxHermiteOrder = 200;

}  // namespace

double log_factorial(int n) {
  require(n >= 0, "log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double hermite_eval(int n, double x) {
  require(n >= 0, "hermite_eval: n must be nonnegative");
  if (n == 0) return 1.0;
  double h0 = 1.0, h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

void orthonormal_hermite_all(int nmax, double beta, double x, double* out) {
  require(nmax >= 0, "orthonormal_hermite: n must be nonnegative");
  require(nmax <= kMaxHermiteOrder, "orthonormal_hermite: n > 200 not supported");
  require(beta > 0.0, "orthonormal_hermite: beta must be positive");
  // Normalised recurrence without the Gaussian; the Gaussian and a running
  // log-scale are applied at the end so neither factor under/overflows alone.
  const double y = beta * x;
  const double gauss_log = -0.5 * y * y;
  double log_scale = 0.0;
  double g0 = std::pow(kPi, -0.25);
  double g1 = std::sqrt(2.0) * y * g0;
  std::vector<double> g(nmax + 1);
  std::vector<double> scale(nmax + 1);
  g[0] = g0;
  scale[0] = 0.0;
  if (nmax >= 1) {
    g[1] = g1;
    scale[1] = 0.0;
  }
  for (int k = 1; k < nmax; ++k) {
    double g2 = std::sqrt(2.0 / (k + 1)) * y * g1 - std::sqrt(static_cast<double>(k) / (k + 1)) * g0;
    g0 = g1;
    g1 = g2;
    if (std::abs(g1) > 1e200) {
      g0 *= 1e-200;
      g1 *= 1e-200;
      log_scale += 200.0 * std::log(10.0);
    }
    g[k + 1] = g1;
    scale[k + 1] = log_scale;
  }
  const double sb = std::sqrt(beta);
  for (int n = 0; n <= nmax; ++n) {
    const double e = gauss_log + scale[n];
    out[n] = (e < -745.0) ? 0.0 : sb * g[n] * std::exp(e);
  }
}

double orthonormal_hermite(int n, double beta, double x) {
  require(n >= 0, "orthonormal_hermite: n must be nonnegative");
  std::vector<double> v(n + 1);
  orthonormal_hermite_all(n, beta, x, v.data());
  return v[n];
}

QuadratureRule gauss_hermite(int k) {
  require(k >= 1 && k <= 512, "gauss_hermite: order must be in [1, 512]");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_hermite;
  std::vector<double> x(k), sw(k);
  const int m = (k + 1) / 2;
  const double pim4 = std::pow(kPi, -0.25);
  // Golub-Welsch eigenvalues seed Newton; asymptotic seeds can overshoot for some k.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(k), sub(std::max(k - 1, 0));
  for (int j = 1; j < k; ++j) sub(j - 1) = std::sqrt(0.5 * j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jac;
  jac.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  for (int i = 0; i < m; ++i) {
    double z = jac.eigenvalues()(k - 1 - i);
    double p2 = 0.0, log_s = 0.0;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      // Orthonormal Hermite polynomials with running rescaling; the Gaussian and
      // the scale cancel in the Newton ratio and enter the weight in log form.
      double p1 = pim4;
      p2 = 0.0;
      log_s = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
        if (std::abs(p1) > 1e150) {
          p1 *= 1e-150;
          p2 *= 1e-150;
          log_s += 150.0 * std::log(10.0);
        }
      }
      const double pp = std::sqrt(2.0 * k) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (!std::isfinite(z)) break;
      if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("gauss_hermite: Newton iteration failed to converge");
    x[i] = z;
    // Scaled weight 1/(k phi_{k-1}(z)^2) with phi_{k-1} = p2 e^{log_s} e^{-z^2/2}.
    sw[i] = std::exp(z * z - 2.0 * log_s - std::log(static_cast<double>(k)) - 2.0 * std::log(std::abs(p2)));
  }
  rule.nodes.resize(k);
  rule.scaled_weights.resize(k);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = -x[i];
    rule.nodes[k - 1 - i] = x[i];
    rule.scaled_weights[i] = sw[i];
    rule.scaled_weights[k - 1 - i] = sw[i];
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    rule.weights[i] = rule.scaled_weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

QuadratureRule gauss_hermite_scaled(int k, double center, double scale) {
  require(scale > 0.0, "gauss_hermite_scaled: scale must be positive");
  QuadratureRule base = gauss_hermite(k);
  for (std::size_t i = 0; i < base.size(); ++i) {
    base.nodes[i] = center + scale * base.nodes[i];
    base.weights[i] *= scale;
    base.scaled_weights[i] *= scale;
  }
  return base;
}

QuadratureRule uniform_panel(double a, double b, int n) {
  require(n >= 2, "uniform_panel: need at least two nodes");
  require(b > a, "uniform_panel: empty interval");
  QuadratureRule rule;
  rule.kind = QuadratureKind::uniform_panel;
  rule.nodes.resize(n);
  rule.weights.assign(n, (b - a) / (n - 1));
  for (int i = 0; i < n; ++i) rule.nodes[i] = a + (b - a) * i / (n - 1);
  rule.weights.front() *= 0.5;
  rule.weights.back() *= 0.5;
  rule.scaled_weights = rule.weights;
  return rule;
}

void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights) {
  require(k >= 1, "gauss_legendre: order must be positive");
  nodes.assign(k, 0.0);
  weights.assign(k, 0.0);
  const int m = (k + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = k * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    nodes[i] = -z;
    nodes[k - 1 - i] = z;
    weights[i] = weights[k - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

EigenDecomposition eigh(const MatrixXc& Ain) {
  require(Ain.rows() == Ain.cols(), "eigh: matrix must be square");
  const Eigen::Index n = Ain.rows();
  const double scale = std::max(1.0, Ain.cwiseAbs().maxCoeff());
  require((Ain - Ain.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "eigh: matrix is not Hermitian within 1e-12");
  MatrixXc A = 0.5 * (Ain + Ain.adjoint());
  MatrixXc V = MatrixXc::Identity(n, n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
  };
  const double total = std::max(A.norm(), 1e-300);

  bool converged = n <= 1;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_norm() <= 1e-15 * total) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double b = std::abs(A(p, q));
        if (b <= 1e-300) continue;
        const cplx phase = A(p, q) / b;  // e^{i phi}
        const double app = A(p, p).real(), aqq = A(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const cplx jpp = c, jpq = s;
        const cplx jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (Eigen::Index r = 0; r < n; ++r) {
          const cplx arp = A(r, p), arq = A(r, q);
          A(r, p) = arp * jpp + arq * jqp;
          A(r, q) = arp * jpq + arq * jqq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const cplx apr = A(p, r), aqr = A(q, r);
          A(p, r) = std::conj(jpp) * apr + std::conj(jqp) * aqr;
          A(q, r) = std::conj(jpq) * apr + std::conj(jqq) * aqr;
        }
        A(p, q) = A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        for (Eigen::Index r = 0; r < n; ++r) {
          const cplx vrp = V(r, p), vrq = V(r, q);
          V(r, p) = vrp * jpp + vrq * jqp;
          V(r, q) = vrp * jpq + vrq * jqq;
        }
      }
    }
  }
  if (!converged && off_norm() > 1e-13 * total) throw NumericalError("eigh: Jacobi sweeps did not converge");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return A(a, a).real() > A(b, b).real(); });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = A(order[k], order[k]).real();
    out.eigenvectors.col(k) = V.col(order[k]);
  }
  return out;
}

SvdResult svd(const MatrixXc& A) {
  SvdResult out;
  if (A.size() == 0) return out;
  Eigen::BDCSVD<MatrixXc> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.U = dec.matrixU();
  out.V = dec.matrixV();
  out.sigma = dec.singularValues();
  return out;
}

Eigen::VectorXd singular_values(const MatrixXc& A) {
  if (A.size() == 0) return {};
  Eigen::BDCSVD<MatrixXc> dec(A);
  return dec.singularValues();
}

int numerical_rank(const MatrixXc& A, double tol) {
  require(tol > 0.0, "numerical_rank: tolerance must be positive");
  const Eigen::VectorXd s = singular_values(A);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

}  // namespace entangle
