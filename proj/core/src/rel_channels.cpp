#include "entangle/rel_channels.hpp"

#include <cmath>

#include "entangle/special.hpp"

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0.0, 1.0);

void check_nz(double nz) { require(nz > 0.0 && nz <= 1.0, "n'_z must lie in (0, 1]"); }

}  // namespace

Eigen::Matrix2cd wigner_block(Spin bra, Spin ket, double nz) {
  check_nz(nz);
  Eigen::Matrix2cd B = Eigen::Matrix2cd::Zero();
  const double p = 0.5 * (1.0 + nz), m = 0.5 * (1.0 - nz);
  if (bra == Spin::up && ket == Spin::up) {
    B(0, 0) = p;
    B(1, 1) = m;
  } else if (bra == Spin::down && ket == Spin::down) {
    B(0, 0) = m;
    B(1, 1) = p;
  } else if (bra == Spin::up && ket == Spin::down) {
    B(0, 1) = p;
    B(1, 0) = -m;
  } else {
    B(0, 1) = -m;
    B(1, 0) = p;
  }
  return B;
}

double nz_prime(const BoostParams& p) {
  require(p.w_over_m > 0.0 && p.w_over_m <= 0.5, "boost: w/m must lie in (0, 0.5]");
  require(p.alpha >= 0.0, "boost: rapidity must be nonnegative");
  const double x = 0.5 * p.w_over_m * std::tanh(0.5 * p.alpha);
  return 1.0 - x * x;
}

SpinCoefficients coefficients_from_matrix(const Eigen::Matrix4cd& rho) {
  SpinCoefficients C{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) C[i][j][k][l] = rho(2 * i + j, 2 * k + l);
  return C;
}

DensityMatrix boost_two_qubit(const SpinCoefficients& C, double nz) {
  check_nz(nz);
  MatrixXc out = MatrixXc::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (C[i][j][k][l] == 0.0) continue;
          const Eigen::Matrix2cd A = wigner_block(static_cast<Spin>(i), static_cast<Spin>(k), nz);
          const Eigen::Matrix2cd B = wigner_block(static_cast<Spin>(j), static_cast<Spin>(l), nz);
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) out.block(2 * a, 2 * b, 2, 2) += C[i][j][k][l] * A(a, b) * B;
        }
  return DensityMatrix(out, {2, 2}, false);
}

Eigen::Matrix4cd werner(double F) {
  require(F >= 0.0 && F <= 1.0, "werner: F must lie in [0, 1]");
  Eigen::Matrix4cd W = Eigen::Matrix4cd::Zero();
  W(0, 0) = W(3, 3) = (1.0 - F) / 3.0;
  W(1, 1) = W(2, 2) = (2.0 * F + 1.0) / 6.0;
  W(1, 2) = W(2, 1) = (1.0 - 4.0 * F) / 6.0;
  return W;
}

DensityMatrix boosted_werner(double F, double nz) {
  require(F >= 0.0 && F <= 1.0, "boosted_werner: F must lie in [0, 1]");
  check_nz(nz);
  const double c = (1.0 - 4.0 * F) / 12.0, n2 = nz * nz;
  MatrixXc R = MatrixXc::Zero(4, 4);
  R(0, 0) = R(3, 3) = 0.25 + c * n2;
  R(1, 1) = R(2, 2) = 0.25 - c * n2;
  R(0, 3) = R(3, 0) = c * (n2 - 1.0);
  R(1, 2) = R(2, 1) = c * (n2 + 1.0);
  return DensityMatrix(R, {2, 2}, false);
}

std::array<double, 4> ppt_eigenvalues(double F, double nz) {
  require(F >= 0.0 && F <= 1.0, "ppt_eigenvalues: F must lie in [0, 1]");
  check_nz(nz);
  const double x1 = (2.0 * F + 1.0) / 6.0;
  const double base = (1.0 - F) / 3.0, d = (1.0 - 4.0 * F) / 6.0 * nz * nz;
  return {x1, base + d, base - d, x1};
}

double distill_boundary(double nz) {
  check_nz(nz);
  return (2.0 + nz * nz) / (2.0 + 4.0 * nz * nz);
}

double spinmom_negativity_bimodal(double theta1, double theta2) {
  const double c = std::cos(theta1 - theta2);
  return c * c;
}

double spinmom_negativity(const std::vector<double>& thetas) {
  require(!thetas.empty(), "spinmom_negativity: need at least one angle");
  const std::vector<double> w(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
  return spinmom_negativity_continuous(w, thetas);
}

double spinmom_negativity_continuous(const std::vector<double>& weights, const std::vector<double>& thetas) {
  require(weights.size() == thetas.size() && !weights.empty(), "spinmom_negativity: size mismatch");
  double tot = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "spinmom_negativity: weights must be nonnegative");
    tot += w;
  }
  require(tot > 0.0, "spinmom_negativity: weights sum to zero");
  double s = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      const double c = std::cos(thetas[i] - thetas[j]);
      s += weights[i] * weights[j] * c * c;
    }
  return std::abs(1.0 - 2.0 * s / (tot * tot));
}

namespace {

void check_channel(const MagneticChannelParams& ch) {
  require(ch.m > 0.0 && ch.p0 > 0.0 && ch.sigma > 0.0 && ch.L >= 0.0 && ch.gammaB0 >= 0.0,
          "magnetic channel: parameters must be positive");
}

struct Barrier {
  cplx den, sincL;
  cplx ps;
};

Barrier barrier(double p, double s, const MagneticChannelParams& ch) {
  require(p > 0.0, "barrier: momentum must be positive");
  require(std::abs(std::abs(s) - 0.5) < 1e-12, "barrier: spin must be +-1/2");
  Barrier b;
  // sin(p_s L)/p_s = L sinc(p_s L) is even in p_s, so the root branch does not matter.
  b.ps = std::sqrt(cplx(p * p - 2.0 * s * ch.m * ch.gammaB0, 0.0));
  b.sincL = ch.L * sinc(b.ps * ch.L);
  b.den = 2.0 * p * std::cos(b.ps * ch.L) - I * (p * p + b.ps * b.ps) * b.sincL;
  return b;
}

// Gauss-Legendre composite rule on the packet support [max(0, p0-8s), p0+8s].
void packet_rule(const MagneticChannelParams& ch, int nodes, std::vector<double>& x, std::vector<double>& w) {
  require(nodes >= 16, "packet quadrature: too few nodes");
  const double lo = std::max(1e-9, ch.p0 - 8.0 * ch.sigma), hi = ch.p0 + 8.0 * ch.sigma;
  std::vector<double> gx, gw;
  gauss_legendre(8, gx, gw);
  const int panels = std::max(2, nodes / 8);
  const double h = (hi - lo) / panels;
  x.clear();
  w.clear();
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * h;
    for (int i = 0; i < 8; ++i) {
      const double t = a + 0.5 * h * (gx[i] + 1.0);
      x.push_back(t);
      w.push_back(0.5 * h * gw[i] * std::exp(-(t - ch.p0) * (t - ch.p0) / (ch.sigma * ch.sigma)) /
                  (std::sqrt(kPi) * ch.sigma));
    }
  }
}

}  // namespace

cplx transmission(double p, double s, const MagneticChannelParams& ch) {
  check_channel(ch);
  const Barrier b = barrier(p, s, ch);
  return 2.0 * p * std::exp(-I * p * ch.L) / b.den;
}

cplx reflection(double p, double s, const MagneticChannelParams& ch) {
  check_channel(ch);
  const Barrier b = barrier(p, s, ch);
  return I * (b.ps * b.ps - p * p) * b.sincL / b.den;
}

double fermion_negativity(const MagneticChannelParams& ch, int nodes) {
  check_channel(ch);
  std::vector<double> x, w;
  packet_rule(ch, nodes, x, w);
  cplx I12 = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const cplx tu = transmission(x[k], 0.5, ch), td = transmission(x[k], -0.5, ch);
    I12 += w[k] * tu * std::conj(td) / (std::norm(tu) + std::norm(td));
    norm += w[k];
  }
  // Packet normalised on p > 0 where it is defined.
  return 2.0 * std::abs(I12) / norm;
}

DensityMatrix no_signalling_bob(const MagneticChannelParams& ch, int nodes) {
  check_channel(ch);
  std::vector<double> x, w;
  packet_rule(ch, nodes, x, w);
  double up = 0.0, dn = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    dn += w[k] * (std::norm(reflection(x[k], -0.5, ch)) + std::norm(transmission(x[k], -0.5, ch)));
    up += w[k] * (std::norm(reflection(x[k], 0.5, ch)) + std::norm(transmission(x[k], 0.5, ch)));
    norm += w[k];
  }
  MatrixXc rho = MatrixXc::Zero(2, 2);
  rho(0, 0) = 0.5 * dn / norm;
  rho(1, 1) = 0.5 * up / norm;
  return DensityMatrix(rho, {2}, false);
}

namespace {

double photon_phase(double w, double B, double w0) {
  const double d = w * w - w0 * w0;
  return B * w * w / (d * d);
}

double photon_dphase(double w, double B, double w0) {
  const double d = w * w - w0 * w0;
  return B * (2.0 * w * d - 4.0 * w * w * w) / (d * d * d);
}

cplx photon_segment(double a, double b, const OpticalChannelParams& ch, const std::vector<double>& gx,
                    const std::vector<double>& gw) {
  cplx tot = 0.0;
  double x = a;
  const double B = ch.BtildeL, w0 = ch.w0;
  while (x < b) {
    // Panel width keeps the phase change below ~0.5 rad; both ends checked so the pole side rules.
    double h = std::min(0.05, b - x);
    const double d0 = std::abs(photon_dphase(x, B, w0)), d1 = std::abs(photon_dphase(x + h, B, w0));
    const double dmax = std::max(d0, d1);
    if (dmax > 0.0) h = std::min(h, 0.5 / dmax);
    h = std::max(h, 1e-14 * std::max(1.0, std::abs(x)));
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double t = x + 0.5 * h * (gx[i] + 1.0);
      const double g = std::exp(-(t - ch.p0) * (t - ch.p0) / (ch.sigma * ch.sigma));
      tot += 0.5 * h * gw[i] * g * std::exp(I * photon_phase(t, B, w0));
    }
    x += h;
  }
  return tot;
}

// int_0^eps e^{i c / x^2} dx in closed form (Faddeeva representation of the Fresnel tail).
cplx window_integral(double eps, double c) {
  if (c == 0.0) return eps;
  const double a = 1.0 / eps;
  const cplx e4 = std::polar(1.0, 0.25 * kPi);
  const cplx J = std::sqrt(kPi) / (2.0 * std::sqrt(c)) * e4 * std::exp(I * c * a * a) * faddeeva(e4 * std::sqrt(c) * a);
  return eps * std::exp(I * c / (eps * eps)) + 2.0 * I * c * J;
}

}  // namespace

double photon_negativity(const OpticalChannelParams& ch) {
  require(ch.sigma > 0.0 && ch.w0 > 0.0 && ch.BtildeL >= 0.0, "optical channel: invalid parameters");
  require(ch.window > 0.0 && ch.window < 0.5, "optical channel: window must lie in (0, 0.5)");
  std::vector<double> gx, gw;
  gauss_legendre(8, gx, gw);
  const double lo = std::max(0.0, ch.p0 - 8.0 * ch.sigma), hi = ch.p0 + 8.0 * ch.sigma;
  const double eps = ch.window * ch.w0;
  cplx tot = 0.0;
  if (ch.w0 + eps <= lo || ch.w0 - eps >= hi) {
    tot = photon_segment(lo, hi, ch, gx, gw);
  } else {
    tot = photon_segment(lo, ch.w0 - eps, ch, gx, gw) + photon_segment(ch.w0 + eps, hi, ch, gx, gw);
    // Excluded window filled with the local model e^{i (B/4)/(w-w0)^2} times the packet at the pole.
    const double g0 = std::exp(-(ch.w0 - ch.p0) * (ch.w0 - ch.p0) / (ch.sigma * ch.sigma));
    tot += g0 * 2.0 * window_integral(eps, 0.25 * ch.BtildeL);
  }
  return std::abs(tot) / (std::sqrt(kPi) * ch.sigma);
}

}  // namespace entangle
