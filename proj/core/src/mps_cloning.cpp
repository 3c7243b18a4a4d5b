#include "entangle/mps_cloning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace entangle {

namespace {

double binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

void require_qubits(const PureState& psi) {
  for (int d : psi.dims)
    if (d != 2) throw ParameterError("expected a multi-qubit state (all local dimensions 2)");
}

}  // namespace

MPS vidal_decompose(const PureState& psi_in, double tol) {
  require_qubits(psi_in);
  require(psi_in.parties() >= 1, "vidal_decompose: empty state");
  require(tol > 0.0, "vidal_decompose: tolerance must be positive");
  const int n = psi_in.parties();
  const VectorXc amps = psi_in.amps / psi_in.amps.norm();
  MPS m;
  m.gammas.resize(n);
  // R: chi_{k-1} x 2^{n-k+1} remainder (already weighted by the previous lambda).
  MatrixXc R = amps.transpose();
  Eigen::VectorXd prev = Eigen::VectorXd::Ones(1);
  auto inv = [](double l) { return l > 1e-14 ? 1.0 / l : 0.0; };
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::Index chi = R.rows(), rest = R.cols() / 2;
    MatrixXc P(chi * 2, rest);
    for (Eigen::Index a = 0; a < chi; ++a)
      for (int i = 0; i < 2; ++i) P.row(a * 2 + i) = R.row(a).segment(i * rest, rest);
    const SvdResult s = svd(P);
    Eigen::Index keep = 0;
    const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
    while (keep < s.sigma.size() && s.sigma(keep) > tol * smax) ++keep;
    if (keep == 0) throw NumericalError("vidal_decompose: zero state");
    const Eigen::VectorXd lam = s.sigma.head(keep);
    m.gammas[k].resize(2);
    for (int i = 0; i < 2; ++i) {
      MatrixXc G(chi, keep);
      for (Eigen::Index a = 0; a < chi; ++a) G.row(a) = inv(prev(a)) * s.U.row(a * 2 + i).head(keep);
      m.gammas[k][i] = G;
    }
    m.lambdas.push_back(lam);
    R = lam.cast<cplx>().asDiagonal() * s.V.leftCols(keep).adjoint();
    prev = lam;
    m.chi = std::max(m.chi, static_cast<int>(keep));
  }
  m.gammas[n - 1].resize(2);
  for (int i = 0; i < 2; ++i) {
    MatrixXc G(R.rows(), 1);
    for (Eigen::Index a = 0; a < R.rows(); ++a) G(a, 0) = inv(prev(a)) * R(a, i);
    m.gammas[n - 1][i] = G;
  }
  return m;
}

PureState mps_reconstruct(const MPS& m) {
  const int n = m.sites();
  require(n >= 1 && static_cast<int>(m.lambdas.size()) == n - 1, "mps_reconstruct: inconsistent MPS");
  std::vector<Eigen::RowVectorXcd> rows = {Eigen::RowVectorXcd::Ones(1)};
  for (int k = 0; k < n; ++k) {
    std::vector<Eigen::RowVectorXcd> next;
    next.reserve(rows.size() * 2);
    for (const auto& r : rows) {
      const Eigen::RowVectorXcd rl =
          k == 0 ? r : Eigen::RowVectorXcd(r.cwiseProduct(m.lambdas[k - 1].cast<cplx>().transpose()));
      for (int i = 0; i < 2; ++i) next.push_back(rl * m.gammas[k][i]);
    }
    rows = std::move(next);
  }
  VectorXc v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) v(static_cast<Eigen::Index>(i)) = rows[i](0);
  return PureState(v, std::vector<int>(n, 2), false);
}

VectorXc symmetric_state(int n0, const Eigen::Vector2cd& a, int n1, const Eigen::Vector2cd& b) {
  require(n0 >= 0 && n1 >= 0 && n0 + n1 >= 1, "symmetric_state: invalid counts");
  const int n = n0 + n1;
  require(n <= 20, "symmetric_state: too many qubits");
  VectorXc out = VectorXc::Zero(1LL << n);
  // Enumerate bit patterns with Hamming weight n1 (1 marks a copy of b).
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    if (std::popcount(static_cast<unsigned long long>(mask)) != n1) continue;
    VectorXc t = VectorXc::Ones(1);
    for (int q = n - 1; q >= 0; --q) {
      const Eigen::Vector2cd& f = (mask >> q) & 1 ? b : a;
      VectorXc nt(t.size() * 2);
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        nt(2 * i) = t(i) * f(0);
        nt(2 * i + 1) = t(i) * f(1);
      }
      t = nt;
    }
    out += t;
  }
  return out / std::sqrt(binom(n, n1));
}

double gm_alpha(int M, int j) {
  require(M >= 1 && j >= 0 && j < M, "gm_alpha: need 0 <= j < M");
  return std::sqrt(2.0 * (M - j) / (static_cast<double>(M) * (M + 1)));
}

PureState gm_target(const Eigen::Vector2cd& psi_in, int M) {
  require(M >= 2, "gm_target: M must be at least 2");
  require(psi_in.norm() > 0.0, "gm_target: zero input");
  const Eigen::Vector2cd psi = psi_in / psi_in.norm();
  const cplx a = psi(0), b = psi(1);
  const Eigen::Vector2cd perp(-std::conj(b), std::conj(a));
  const Eigen::Vector2cd star(std::conj(b), std::conj(a));
  const Eigen::Vector2cd star_perp(a, -b);
  const int n = 2 * M - 1;
  VectorXc out = VectorXc::Zero(1LL << n);
  for (int j = 0; j < M; ++j) {
    const VectorXc clones = symmetric_state(M - j, psi, j, perp);
    const VectorXc anti = symmetric_state(M - 1 - j, star, j, star_perp);
    VectorXc prod(clones.size() * anti.size());
    for (Eigen::Index i = 0; i < clones.size(); ++i) prod.segment(i * anti.size(), anti.size()) = clones(i) * anti;
    out += gm_alpha(M, j) * prod;
  }
  return PureState(out, std::vector<int>(n, 2), false);
}

PureState pcc_target(double phi, int M) {
  require(M >= 3 && M % 2 == 1, "pcc_target: M must be odd and at least 3");
  const int k = (M - 1) / 2;
  const Eigen::Vector2cd e0(1.0, 0.0), e1(0.0, 1.0);
  const VectorXc v = (symmetric_state(k + 1, e0, k, e1) + std::polar(1.0, phi) * symmetric_state(k, e0, k + 1, e1)) /
                     std::sqrt(2.0);
  return PureState(v, std::vector<int>(M, 2), false);
}

double clone_N(int M, const std::vector<double>& w, int i, int j) {
  require(static_cast<int>(w.size()) == M, "clone_N: weight count must equal M");
  if (i < 0 || j < 0 || i + j > M) return 0.0;
  double s = 0.0;
  for (int k = j; k < M; ++k) s += w[k] * w[k] * binom(M - k, i) * binom(k, j) / binom(M, i + j);
  return s / binom(i + j, i);
}

namespace {

IsometrySet build_isometries(int M, const std::vector<double>& w, CloneMode mode) {
  auto C = [&](int i, int j) { return std::sqrt(clone_N(M, w, i, j)); };
  const int D = M;
  IsometrySet s;
  s.M = M;
  s.D0 = D;
  s.D = 2 * D;
  s.mode = mode;
  s.weights = w;
  for (int n = 1; n <= 2 * M - 1; ++n) {
    MatrixXc U = MatrixXc::Zero(D, D), Dn = MatrixXc::Zero(D, D);
    int used = 0;  // columns 1..used carry the state
    if (n < M) {
      for (int i = 1; i <= n; ++i) U(i - 1, i - 1) = C(n + 1 - i, i - 1) / C(n - i, i - 1);
      for (int j = 1; j <= n; ++j) Dn(j, j - 1) = C(n - j, j) / C(n - j, j - 1);
      used = n;
    } else if (n == M) {
      for (int i = 1; i <= M; ++i) U(i - 1, i - 1) = w[i - 1] / (C(M - i, i - 1) * std::sqrt(binom(M, i - 1)));
      for (int j = 1; j < M; ++j) Dn(j, j - 1) = w[j] / (C(M - j, j - 1) * std::sqrt(binom(M, j)));
      used = M;
    } else {
      const int r = 2 * M - n;  // remaining anticlones including this one
      for (int i = 1; i <= r; ++i) {
        U(i - 1, i) = std::sqrt(static_cast<double>(i) / r);
        Dn(i - 1, i - 1) = std::sqrt(static_cast<double>(r + 1 - i) / r);
      }
      used = r + 1;
    }
    // Unused columns: 1/sqrt(2) on the diagonal row when free, else the first free row.
    for (int j = used + 1; j <= D; ++j) {
      auto free_row = [&](const MatrixXc& X) {
        auto is_free = [&](int r) { return X.row(r).cwiseAbs().maxCoeff() == 0.0; };
        if (is_free(j - 1)) return j - 1;
        for (int r = 0; r < D; ++r)
          if (is_free(r)) return r;
        return -1;
      };
      const int ru = free_row(U), rd = free_row(Dn);
      if (ru >= 0 && rd >= 0) {
        U(ru, j - 1) = Dn(rd, j - 1) = 1.0 / std::sqrt(2.0);
      } else if (ru >= 0) {
        U(ru, j - 1) = 1.0;
      } else if (rd >= 0) {
        Dn(rd, j - 1) = 1.0;
      } else {
        // Gram-Schmidt completion on the stacked isometry.
        MatrixXc S(2 * D, D);
        S << U, Dn;
        VectorXc best;
        for (int r = 0; r < 2 * D && best.size() == 0; ++r) {
          VectorXc e = VectorXc::Unit(2 * D, r);
          for (int c = 0; c < j - 1; ++c) e -= S.col(c).dot(e) * S.col(c);
          if (e.norm() > 0.5) best = e / e.norm();
        }
        if (best.size() == 0) throw NumericalError("isometry completion failed");
        U.col(j - 1) = best.head(D);
        Dn.col(j - 1) = best.tail(D);
      }
    }
    s.V0.push_back({U, Dn});
  }
  return s;
}

}  // namespace

IsometrySet universal_isometries(int M) {
  require(M >= 2, "universal_isometries: M must be at least 2");
  std::vector<double> w(M);
  for (int j = 0; j < M; ++j) w[j] = gm_alpha(M, j);
  return build_isometries(M, w, CloneMode::universal);
}

IsometrySet phase_covariant_isometries(int M) {
  require(M >= 3 && M % 2 == 1, "phase_covariant_isometries: M must be odd and at least 3");
  // Same table with M -> (M+1)/2 and alpha_j -> gamma_j.
  const int k = (M - 1) / 2, Mp = k + 1;
  std::vector<double> g(Mp);
  for (int j = 0; j < Mp; ++j) g[j] = std::sqrt(binom(k + 1, j) * binom(k, j) / binom(2 * k + 1, k));
  IsometrySet s = build_isometries(Mp, g, CloneMode::phase_covariant);
  s.M = M;
  return s;
}

double isometry_residual(const IsometrySet& s) {
  double r = 0.0;
  for (const auto& V : s.V0) {
    const MatrixXc G = V[0].adjoint() * V[0] + V[1].adjoint() * V[1] - MatrixXc::Identity(s.D0, s.D0);
    r = std::max(r, G.cwiseAbs().maxCoeff());
  }
  return r;
}

namespace {

// Ancilla vectors v_i for every emitted bit string i (first emitted qubit = most significant bit).
std::vector<VectorXc> run_chain(const IsometrySet& s, int branch) {
  std::vector<VectorXc> v = {VectorXc::Unit(s.D0, 0)};
  for (int k = 0; k < s.steps(); ++k) {
    std::vector<VectorXc> next(v.size() * 2);
    for (std::size_t p = 0; p < v.size(); ++p)
      for (int i = 0; i < 2; ++i) {
        const MatrixXc& V = branch == 0 ? s.V0[k][i] : s.V1(k, i);
        next[2 * p + i] = V * v[p];
      }
    v = std::move(next);
  }
  return v;
}

}  // namespace

VectorXc apply_chain(const IsometrySet& s, int branch, VectorXc* phi_final) {
  const std::vector<VectorXc> v = run_chain(s, branch);
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].norm() > v[best].norm()) best = i;
  const VectorXc phiF = v[best] / v[best].norm();
  VectorXc amps(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    amps(static_cast<Eigen::Index>(i)) = phiF.dot(v[i]);
    if ((v[i] - amps(static_cast<Eigen::Index>(i)) * phiF).norm() > 1e-10)
      throw NumericalError("apply_chain: ancilla does not decouple from the emitted qubits");
  }
  if (phi_final) *phi_final = phiF;
  return amps;
}

double qubit_fidelity(const PureState& state, int k, const Eigen::Vector2cd& psi) {
  require_qubits(state);
  const int n = state.parties();
  require(k >= 0 && k < n, "qubit_fidelity: qubit index out of range");
  const PureState s(state.amps, state.dims);
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const long long bit = 1LL << (n - 1 - k);
  for (long long i = 0; i < s.amps.size(); ++i) {
    if (i & bit) continue;
    const cplx c0 = s.amps(i), c1 = s.amps(i | bit);
    rho(0, 0) += c0 * std::conj(c0);
    rho(0, 1) += c0 * std::conj(c1);
    rho(1, 0) += c1 * std::conj(c0);
    rho(1, 1) += c1 * std::conj(c1);
  }
  const Eigen::Vector2cd p = psi / psi.norm();
  return std::real(p.dot(rho * p));
}

CloneTrace sequential_clone(const Eigen::Vector2cd& psi_in, int M, CloneMode mode) {
  require(psi_in.norm() > 0.0, "sequential_clone: zero input");
  const Eigen::Vector2cd psi = psi_in / psi_in.norm();
  const IsometrySet s = mode == CloneMode::universal ? universal_isometries(M) : phase_covariant_isometries(M);
  const int nq = s.steps();
  CloneTrace tr;
  tr.residual = isometry_residual(s);
  tr.ancilla_dim = s.D;
  if (mode == CloneMode::universal) {
    tr.target = gm_target(psi, M);
  } else {
    const int k = (M - 1) / 2;
    const Eigen::Vector2cd e0(1.0, 0.0), e1(0.0, 1.0);
    tr.target = PureState(psi(0) * symmetric_state(k + 1, e0, k, e1) + psi(1) * symmetric_state(k, e0, k + 1, e1),
                          std::vector<int>(M, 2));
  }

  VectorXc phiF[2];
  apply_chain(s, 0, &phiF[0]);
  apply_chain(s, 1, &phiF[1]);
  // Doubled ancilla: control qubit (x) D0-level register; V[k]^i = |0><0| V0^i + |1><1| V1^i.
  const int D0 = s.D0;
  std::vector<VectorXc> v = {VectorXc::Zero(2 * D0)};
  v[0](0) = psi(0);
  v[0](D0) = psi(1);
  for (int k = 0; k < nq; ++k) {
    std::vector<VectorXc> next(v.size() * 2);
    for (std::size_t p = 0; p < v.size(); ++p)
      for (int i = 0; i < 2; ++i) {
        VectorXc x(2 * D0);
        x.head(D0) = s.V0[k][i] * v[p].head(D0);
        x.tail(D0) = s.V1(k, i) * v[p].tail(D0);
        next[2 * p + i] = x;
      }
    v = std::move(next);
  }
  // Generalised Hadamard on span{|0>phiF0, |1>phiF1}, then projective measurement on that basis.
  VectorXc out[2] = {VectorXc(static_cast<Eigen::Index>(v.size())), VectorXc(static_cast<Eigen::Index>(v.size()))};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const cplx c0 = phiF[0].dot(v[i].head(D0)), c1 = phiF[1].dot(v[i].tail(D0));
    const double leak = (v[i].head(D0) - c0 * phiF[0]).norm() + (v[i].tail(D0) - c1 * phiF[1]).norm();
    if (leak > 1e-10) throw NumericalError("sequential_clone: ancilla left the measured subspace");
    const Eigen::Index ii = static_cast<Eigen::Index>(i);
    out[0](ii) = (c0 + c1) / std::sqrt(2.0);
    // Branch 1 followed by a pi phase gate on every qubit.
    const double sign = std::popcount(static_cast<unsigned long long>(i)) % 2 ? -1.0 : 1.0;
    out[1](ii) = sign * (c0 - c1) / std::sqrt(2.0);
  }
  for (int b = 0; b < 2; ++b) {
    tr.branch[b].probability = out[b].squaredNorm();
    tr.branch[b].output = PureState(out[b], std::vector<int>(nq, 2));
    tr.branch[b].overlap = std::abs(tr.target.amps.normalized().dot(tr.branch[b].output.amps));
  }
  return tr;
}

}  // namespace entangle
