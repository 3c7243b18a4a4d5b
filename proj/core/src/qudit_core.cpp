#include "entangle/qudit_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace entangle {

namespace {

long long product(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) {
    require(d >= 1, "dimensions must be positive");
    p *= d;
  }
  return p;
}

std::vector<int> digits_of(long long idx, const std::vector<int>& dims) {
  std::vector<int> dg(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    dg[k] = static_cast<int>(idx % dims[k]);
    idx /= dims[k];
  }
  return dg;
}

long long index_of(const std::vector<int>& dg, const std::vector<int>& dims, const std::vector<int>& which) {
  long long idx = 0;
  for (int k : which) idx = idx * dims[k] + dg[k];
  return idx;
}

std::vector<int> complement(const std::vector<int>& block, int n) {
  std::vector<int> rest;
  for (int k = 0; k < n; ++k)
    if (std::find(block.begin(), block.end(), k) == block.end()) rest.push_back(k);
  return rest;
}

void check_subsystems(const std::vector<int>& idx, int n) {
  std::vector<int> s = idx;
  std::sort(s.begin(), s.end());
  require(std::adjacent_find(s.begin(), s.end()) == s.end(), "duplicate subsystem index");
  for (int k : s) require(k >= 0 && k < n, "subsystem index out of range");
}

}  // namespace

PureState::PureState(VectorXc a, std::vector<int> d, bool normalize) : amps(std::move(a)), dims(std::move(d)) {
  require(product(dims) == amps.size(), "PureState: dims do not match amplitude count");
  const double n = amps.norm();
  require(n > 0.0, "PureState: zero vector");
  if (normalize) amps /= n;
}

DensityMatrix::DensityMatrix(MatrixXc m, std::vector<int> d, bool validate) : matrix(std::move(m)), dims(std::move(d)) {
  require(matrix.rows() == matrix.cols(), "DensityMatrix: matrix must be square");
  require(product(dims) == matrix.rows(), "DensityMatrix: dims do not match matrix size");
  if (validate) {
    require((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "DensityMatrix: not Hermitian");
    require(std::abs(matrix.trace() - cplx(1.0)) <= 1e-10, "DensityMatrix: trace differs from 1");
  }
}

PureState ket(const std::vector<int>& digits, const std::vector<int>& dims) {
  require(digits.size() == dims.size(), "ket: digit count mismatch");
  std::vector<int> all(dims.size());
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t k = 0; k < dims.size(); ++k) require(digits[k] >= 0 && digits[k] < dims[k], "ket: digit out of range");
  VectorXc v = VectorXc::Zero(product(dims));
  v(index_of(digits, dims, all)) = 1.0;
  return PureState(v, dims);
}

VectorXc ket_bits(const std::string& bits) {
  VectorXc v = VectorXc::Zero(1LL << bits.size());
  long long idx = 0;
  for (char c : bits) {
    require(c == '0' || c == '1', "ket_bits: expected a 0/1 string");
    idx = 2 * idx + (c - '0');
  }
  v(idx) = 1.0;
  return v;
}

DensityMatrix projector(const PureState& psi) {
  return DensityMatrix(psi.amps * psi.amps.adjoint() / psi.amps.squaredNorm(), psi.dims, false);
}

PureState tensor(const PureState& a, const PureState& b) {
  VectorXc v(a.amps.size() * b.amps.size());
  for (Eigen::Index i = 0; i < a.amps.size(); ++i) v.segment(i * b.amps.size(), b.amps.size()) = a.amps(i) * b.amps;
  std::vector<int> d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  return PureState(v, d, false);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_in) {
  const int n = static_cast<int>(rho.dims.size());
  check_subsystems(keep_in, n);
  std::vector<int> keep = keep_in;
  std::sort(keep.begin(), keep.end());
  const std::vector<int> rest = complement(keep, n);
  std::vector<int> kd;
  for (int k : keep) kd.push_back(rho.dims[k]);
  const long long dk = product(kd);
  MatrixXc out = MatrixXc::Zero(dk, dk);
  const long long N = rho.matrix.rows();
  std::vector<std::vector<int>> dg(N);
  for (long long i = 0; i < N; ++i) dg[i] = digits_of(i, rho.dims);
  for (long long i = 0; i < N; ++i) {
    const long long ri = index_of(dg[i], rho.dims, rest), ki = index_of(dg[i], rho.dims, keep);
    for (long long j = 0; j < N; ++j) {
      if (index_of(dg[j], rho.dims, rest) != ri) continue;
      out(ki, index_of(dg[j], rho.dims, keep)) += rho.matrix(i, j);
    }
  }
  return DensityMatrix(out, kd, false);
}

MatrixXc partial_transpose(const DensityMatrix& rho, int subsystem) {
  const int n = static_cast<int>(rho.dims.size());
  require(subsystem >= 0 && subsystem < n, "partial_transpose: subsystem out of range");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const long long N = rho.matrix.rows();
  MatrixXc out(N, N);
  for (long long i = 0; i < N; ++i) {
    const std::vector<int> di = digits_of(i, rho.dims);
    for (long long j = 0; j < N; ++j) {
      std::vector<int> a = di, b = digits_of(j, rho.dims);
      std::swap(a[subsystem], b[subsystem]);
      out(index_of(a, rho.dims, all), index_of(b, rho.dims, all)) = rho.matrix(i, j);
    }
  }
  return out;
}

double negativity(const DensityMatrix& rho) {
  require(rho.dims.size() >= 2, "negativity: need a bipartite state");
  const EigenDecomposition e = eigh(partial_transpose(rho, static_cast<int>(rho.dims.size()) - 1));
  return std::max(0.0, -2.0 * e.eigenvalues(e.eigenvalues.size() - 1));
}

double vn_entropy(const DensityMatrix& rho) {
  const EigenDecomposition e = eigh(rho.matrix);
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
    const double l = e.eigenvalues(i);
    require(l >= -1e-10, "vn_entropy: negative eigenvalue below -1e-10");
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

MatrixXc coefficient_matrix_partition(const PureState& psi, const std::vector<int>& first_block) {
  const int n = psi.parties();
  check_subsystems(first_block, n);
  require(!first_block.empty() && static_cast<int>(first_block.size()) < n, "partition must be a proper bipartition");
  const std::vector<int> rest = complement(first_block, n);
  std::vector<int> d1, d2;
  for (int k : first_block) d1.push_back(psi.dims[k]);
  for (int k : rest) d2.push_back(psi.dims[k]);
  MatrixXc C(product(d1), product(d2));
  for (long long i = 0; i < psi.amps.size(); ++i) {
    const std::vector<int> dg = digits_of(i, psi.dims);
    C(index_of(dg, psi.dims, first_block), index_of(dg, psi.dims, rest)) = psi.amps(i);
  }
  return C;
}

SchmidtDecomposition schmidt_finite(const PureState& psi, int cut) {
  require(cut >= 1 && cut < psi.parties(), "schmidt_finite: cut must split the parties");
  std::vector<int> block(cut);
  std::iota(block.begin(), block.end(), 0);
  return decompose(coefficient_matrix_partition(psi, block));
}

bool majorizes(std::vector<double> x, std::vector<double> y) {
  require(x.size() == y.size(), "majorizes: vectors must have equal length");
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    if (sx > sy + 1e-12) return false;
  }
  return std::abs(sx - sy) <= 1e-12;
}

PureState permute(const PureState& psi, const std::vector<int>& order) {
  const int n = psi.parties();
  require(static_cast<int>(order.size()) == n, "permute: order must list every subsystem");
  check_subsystems(order, n);
  std::vector<int> nd;
  for (int k : order) nd.push_back(psi.dims[k]);
  VectorXc v(psi.amps.size());
  for (long long i = 0; i < psi.amps.size(); ++i) {
    const std::vector<int> dg = digits_of(i, psi.dims);
    v(index_of(dg, psi.dims, order)) = psi.amps(i);
  }
  return PureState(v, nd, false);
}

}  // namespace entangle
