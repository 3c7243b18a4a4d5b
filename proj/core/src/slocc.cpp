#include "entangle/slocc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix2cd reshape_w(const Eigen::Vector4cd& w) {
  // w = e1 (x) w_1 + e2 (x) w_2  ->  W = [w_1 w_2]
  Eigen::Matrix2cd W;
  W << w(0), w(2), w(1), w(3);
  return W;
}

int rank2x2(const Eigen::Matrix2cd& W, const SloccTolerances& tol) { return robust_rank(W, tol); }

}  // namespace

std::string to_string(SloccLabel l) {
  switch (l) {
    case SloccLabel::Bipartite: return "Bipartite";
    case SloccLabel::C000: return "000";
    case SloccLabel::C01Psi: return "0_1Psi";
    case SloccLabel::C02Psi: return "0_2Psi";
    case SloccLabel::C03Psi: return "0_3Psi";
    case SloccLabel::GHZ: return "GHZ";
    case SloccLabel::W: return "W";
    case SloccLabel::FourQubit: return "FourQubit";
  }
  return "unknown";
}

std::string SloccClass::name() const {
  if (label == SloccLabel::Bipartite) return "Psi_" + std::to_string(bipartite_rank);
  if (label == SloccLabel::FourQubit) return structure;
  return to_string(label);
}

int robust_rank(const MatrixXc& A, const SloccTolerances& tol) {
  require(tol.rank > 0.0 && tol.ambiguity >= 1.0, "robust_rank: invalid tolerances");
  const Eigen::VectorXd s = singular_values(A);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double ratio = s(i) / s(0);
    if (ratio > tol.rank && ratio <= tol.ambiguity * tol.rank) {
      std::ostringstream os;
      os << "ambiguous rank: singular-value ratio " << ratio << " lies in the tolerance band";
      throw NumericalError(os.str());
    }
    if (ratio > tol.rank) ++r;
  }
  return r;
}

SloccClass classify_bipartite(const PureState& psi, const SloccTolerances& tol) {
  require(psi.parties() == 2, "classify_bipartite: expected two parties");
  SloccClass c;
  c.label = SloccLabel::Bipartite;
  c.tolerance = tol.rank;
  c.bipartite_rank = robust_rank(coefficient_matrix_partition(psi, {0}), tol);
  c.ranks = {c.bipartite_rank};
  return c;
}

WMatrices w_matrices(const PureState& psi, const SloccTolerances& tol) {
  require(psi.dims == std::vector<int>({2, 2, 2}), "w_matrices: expected three qubits");
  const MatrixXc C = coefficient_matrix_partition(psi, {0});
  require(robust_rank(C, tol) == 2, "w_matrices: rank of C1 must be 2");
  const SvdResult s = svd(C);
  WMatrices w;
  // Rows of C1 span the right Schmidt space; its basis vectors are conj(V columns).
  w.W1 = reshape_w(s.V.col(0).conjugate());
  w.W2 = reshape_w(s.V.col(1).conjugate());
  w.rank1 = rank2x2(w.W1, tol);
  w.rank2 = rank2x2(w.W2, tol);
  return w;
}

SloccClass classify_three_qubit(const PureState& psi_in, const SloccTolerances& tol) {
  require(psi_in.dims == std::vector<int>({2, 2, 2}), "classify_three_qubit: expected three qubits");
  const PureState psi(psi_in.amps, psi_in.dims);
  SloccClass c;
  c.tolerance = tol.rank;
  for (int k = 0; k < 3; ++k) c.ranks.push_back(robust_rank(coefficient_matrix_partition(psi, {k}), tol));
  const auto& r = c.ranks;
  if (r[0] == 1 && r[1] == 1 && r[2] == 1) {
    c.label = SloccLabel::C000;
    return c;
  }
  if (r[0] == 1 && r[1] == 2 && r[2] == 2) {
    c.label = SloccLabel::C01Psi;
    return c;
  }
  if (r[0] == 2 && r[1] == 1 && r[2] == 2) {
    c.label = SloccLabel::C02Psi;
    return c;
  }
  if (r[0] == 2 && r[1] == 2 && r[2] == 1) {
    c.label = SloccLabel::C03Psi;
    return c;
  }
  if (!(r[0] == 2 && r[1] == 2 && r[2] == 2))
    throw NumericalError("classify_three_qubit: inconsistent partition ranks");

  WMatrices w = w_matrices(psi, tol);
  c.w_ranks = {w.rank1, w.rank2};
  if (w.rank1 == 1 && w.rank2 == 1) {
    c.label = SloccLabel::GHZ;
    return c;
  }
  if (w.rank1 < 2) std::swap(w.W1, w.W2);
  const Eigen::Matrix2cd A = w.W1.inverse() * w.W2;
  const cplx tr = A.trace(), det = A.determinant();
  const cplx disc = tr * tr - 4.0 * det;  // = (l_a - l_b)^2
  const cplx sq = std::sqrt(disc);
  const cplx la = 0.5 * (tr + sq), lb = 0.5 * (tr - sq);
  c.pencil_spectrum = {la, lb};
  // The squared gap is tested: a Jordan block perturbed by eps splits as sqrt(eps).
  const double scale = std::max(1.0, std::max(std::abs(la), std::abs(lb)));
  const bool degenerate = std::abs(disc) <= tol.degeneracy * tol.degeneracy * scale * scale;
  c.label = degenerate ? SloccLabel::W : SloccLabel::GHZ;
  return c;
}

std::vector<ProjectivePoint> pencil_product_points(const Eigen::Vector4cd& w1, const Eigen::Vector4cd& w2,
                                                   double tol) {
  const Eigen::Matrix2cd A = reshape_w(w1), B = reshape_w(w2);
  // det(alpha A + beta B) = a alpha^2 + b alpha beta + c beta^2
  const cplx a = A.determinant(), c = B.determinant();
  const cplx b = A(0, 0) * B(1, 1) + A(1, 1) * B(0, 0) - A(0, 1) * B(1, 0) - A(1, 0) * B(0, 1);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  const double ref = std::max(w1.squaredNorm(), w2.squaredNorm());
  if (scale <= tol * ref) return {};
  const cplx disc = b * b - 4.0 * a * c;
  const bool dbl = std::abs(disc) <= std::max(tol, 1e-12) * scale * scale;
  auto point = [](cplx al, cplx be) {
    const double m = std::max(std::abs(al), std::abs(be));
    return ProjectivePoint{al / m, be / m};
  };
  std::vector<ProjectivePoint> pts;
  const cplx sq = dbl ? cplx(0.0) : std::sqrt(disc);
  if (std::abs(a) >= std::abs(c)) {
    // roots x = alpha/beta of a x^2 + b x + c
    const cplx q = -0.5 * (b + (std::real(std::conj(b) * sq) >= 0.0 ? sq : -sq));
    if (std::abs(q) == 0.0) {
      pts.push_back(point(0.0, 1.0));
    } else {
      pts.push_back(point(q / a, 1.0));
      if (!dbl) pts.push_back(point(c / q, 1.0));
    }
  } else {
    // roots y = beta/alpha of c y^2 + b y + a
    const cplx q = -0.5 * (b + (std::real(std::conj(b) * sq) >= 0.0 ? sq : -sq));
    if (std::abs(q) == 0.0) {
      pts.push_back(point(1.0, 0.0));
    } else {
      pts.push_back(point(1.0, q / c));
      if (!dbl) pts.push_back(point(1.0, a / q));
    }
  }
  return pts;
}

cplx hyperdeterminant(const VectorXc& a) {
  require(a.size() == 8, "hyperdeterminant: expected eight amplitudes");
  auto A = [&](int i, int j, int k) { return a(4 * i + 2 * j + k); };
  const cplx a000 = A(0, 0, 0), a001 = A(0, 0, 1), a010 = A(0, 1, 0), a011 = A(0, 1, 1);
  const cplx a100 = A(1, 0, 0), a101 = A(1, 0, 1), a110 = A(1, 1, 0), a111 = A(1, 1, 1);
  cplx d = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
           a100 * a100 * a011 * a011;
  d -= 2.0 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
              a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101);
  d += 4.0 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111);
  return d;
}

namespace {

// Coefficients c_0..c_deg of a polynomial of degree <= deg from samples on roots of unity.
std::vector<cplx> interpolate(const std::function<cplx(cplx)>& f, int deg) {
  const int n = deg + 1;
  std::vector<cplx> vals(n), coef(n, 0.0);
  for (int k = 0; k < n; ++k) vals[k] = f(std::polar(1.0, 2.0 * kPi * k / n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) coef[j] += vals[k] * std::polar(1.0, -2.0 * kPi * j * k / n);
    coef[j] /= static_cast<double>(n);
  }
  return coef;
}

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  const double scale = std::max(1e-300, std::abs(*std::max_element(
                                            c.begin(), c.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); })));
  while (!c.empty() && std::abs(c.back()) <= 1e-12 * scale) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<cplx> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 20; ++it) {  // Newton polish
      cplx p = c[deg], dp = 0.0;
      for (int k = deg - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k];
      }
      if (std::abs(dp) < 1e-300) break;
      const cplx step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

std::string psi_name(SloccLabel l) {
  if (l == SloccLabel::C01Psi) return "0_1Psi";
  if (l == SloccLabel::C02Psi) return "0_2Psi";
  return "0_3Psi";
}

}  // namespace

FourQubitReport four_qubit_probe(const PureState& psi_in, const SloccTolerances& tol) {
  require(psi_in.dims == std::vector<int>({2, 2, 2, 2}), "four_qubit_probe: expected four qubits");
  const PureState psi(psi_in.amps, psi_in.dims);
  FourQubitReport rep;
  std::vector<int> r;
  for (int k = 0; k < 4; ++k) r.push_back(robust_rank(coefficient_matrix_partition(psi, {k}), tol));
  const MatrixXc C = coefficient_matrix_partition(psi, {0});
  rep.w_dim = r[0];
  if (r[0] == 1) {
    rep.tag = "degenerate/factor";
    rep.generic_class = classify_three_qubit(PureState(C.row(0).transpose(), {2, 2, 2}), tol).name();
    return rep;
  }
  if (std::find(r.begin(), r.end(), 1) != r.end()) {
    rep.tag = "degenerate/factor";
    return rep;
  }
  const SvdResult s = svd(C);
  const VectorXc w1 = s.V.col(0).conjugate(), w2 = s.V.col(1).conjugate();
  // Fixed Moebius mixing keeps the exceptional members at finite pencil parameter.
  const cplx c1(0.31, 0.17), c2(-0.23, 0.41);
  const VectorXc u = w1 + c1 * w2, v = w2 + c2 * w1;
  auto member = [&](cplx t) { return PureState(u + t * v, {2, 2, 2}); };

  std::map<std::string, int> votes;
  for (int k = 0; k < 64; ++k) {
    const cplx t = std::polar(0.2 + 2.0 * (k + 0.5) / 64.0, 2.39996322972865332 * k);
    try {
      ++votes[classify_three_qubit(member(t), tol).name()];
    } catch (const NumericalError&) {
    }
  }
  if (votes.empty()) throw NumericalError("four_qubit_probe: no classifiable pencil member");
  rep.generic_class =
      std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;

  // Candidate exceptional members: zeros of the hyperdeterminant and of 2x2 minors per partition.
  std::vector<cplx> cand;
  const std::vector<cplx> hd = interpolate([&](cplx t) { return hyperdeterminant(u + t * v); }, 4);
  for (cplx z : poly_roots(hd)) cand.push_back(z);
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        auto minor = [&](cplx t) {
          const MatrixXc Ck = coefficient_matrix_partition(PureState(u + t * v, {2, 2, 2}, false), {k});
          return Ck(0, a) * Ck(1, b) - Ck(0, b) * Ck(1, a);
        };
        for (cplx z : poly_roots(interpolate(minor, 2))) cand.push_back(z);
      }
    }
  }
  std::vector<cplx> pts;
  for (cplx z : cand) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
    bool dup = false;
    for (cplx p : pts) dup = dup || std::abs(p - z) <= 1e-5 * (1.0 + std::abs(z));
    if (!dup) pts.push_back(z);
  }
  const SloccTolerances loose{1e-6, 1.0, 1e-3};
  int n000 = 0;
  bool hasW = false;
  std::vector<std::string> psis;
  for (cplx z : pts) {
    SloccClass cl;
    try {
      cl = classify_three_qubit(member(z), loose);
    } catch (const NumericalError&) {
      continue;
    }
    if (cl.name() == rep.generic_class) continue;
    rep.exceptional.push_back(cl.name());
    if (cl.label == SloccLabel::C000) ++n000;
    else if (cl.label == SloccLabel::W) hasW = true;
    else if (cl.label != SloccLabel::GHZ) psis.push_back(psi_name(cl.label));
  }
  if (rep.generic_class == "GHZ") {
    if (n000 >= 2) rep.tag = "span(000,000)";
    else if (n000 == 1 && !psis.empty()) rep.tag = "span(000," + psis[0] + ")";
    else if (n000 == 1) rep.tag = "span(000,GHZ)";
    else if (psis.size() >= 2) rep.tag = "span(" + psis[0] + "," + psis[1] + ")";
    else if (psis.size() == 1) rep.tag = "span(" + psis[0] + ",GHZ)";
    else rep.tag = hasW ? "span(GHZ,W)" : "span(GHZ,GHZ)";
  } else if (rep.generic_class == "W") {
    if (n000 >= 1) rep.tag = "span(000,W)";
    else if (!psis.empty()) rep.tag = "span(" + psis[0] + ",W)";
    else rep.tag = "span(W,W)";
  } else {
    rep.tag = "degenerate/factor";
  }
  return rep;
}

long long class_count_bound(long long M, long long N) {
  require(M >= 1 && N >= 1, "class_count_bound: arguments must be positive");
  return M * (M + 2 * N + 3) / 2;
}

}  // namespace entangle
