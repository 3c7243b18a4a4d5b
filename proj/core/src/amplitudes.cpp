#include "entangle/amplitudes.hpp"

#include <cmath>

#include "entangle/special.hpp"

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0.0, 1.0);

}  // namespace

BipartiteAmplitude pdc(double L_p, double L_q) {
  require(L_p != L_q, "pdc: L_p and L_q must differ for a normalisable amplitude");
  BipartiteAmplitude f;
  f.variant = AmplitudeVariant::pdc;
  f.params = {{"L_p", L_p}, {"L_q", L_q}};
  f.domain = {-60.0, 60.0, -60.0, 60.0};
  f.fn = [L_p, L_q](double p, double q) -> cplx {
    const double s = p + q;
    return std::exp(-s * s) * sinc(0.5 * (L_p * p + L_q * q));
  };
  // u = p + q, v = (Lp p + Lq q)/2: Jacobian 2/|Lq - Lp|, int e^{-2u^2} = sqrt(pi/2), int sinc^2 = pi.
  f.exact_norm2 = std::sqrt(kPi / 2.0) * 2.0 * kPi / std::abs(L_q - L_p);
  return f;
}

BipartiteAmplitude pdc_from_physical(double ko_L, double ke_L, double sigma) {
  require(sigma > 0.0, "pdc: pump width must be positive");
  return pdc(ko_L * sigma, ke_L * sigma);
}

cplx qed_t_channel(double p, double q, double t, const QedParams& prm) {
  require(prm.pa0_over_m > 0.0 && prm.sigma_over_m > 0.0, "qed_t_channel: parameters must be positive");
  const double pm = prm.pa0_over_m;
  const double r = prm.pa0_over_m / prm.sigma_over_m;
  const double x = p + q;
  const double p2r2 = p * p + r * r;
  // sin(x t)/Sigma with Sigma = (pm/2) x, written through sinc to remove x = 0.
  cplx val = t * sinc(x * t) / (0.5 * pm) / p2r2;
  if (prm.include_oscillatory) {
    const double S = 0.5 * pm * x;
    const double mu = std::sqrt(2.0) * std::sqrt(p2r2);
    const double den = S * S - mu * mu;
    val += (2.0 / mu) * (-S * std::sin(x * t) / (mu * den) -
                         I / den * (std::cos(x * t) - std::exp(-I * (2.0 / pm) * mu * t)));
  }
  return val * std::exp(-0.5 * p * p - 0.5 * q * q);
}

BipartiteAmplitude qed_amplitude(double t, const QedParams& prm) {
  require(prm.pa0_over_m > 0.0 && prm.sigma_over_m > 0.0, "qed: parameters must be positive");
  BipartiteAmplitude f;
  f.variant = AmplitudeVariant::qed_t_channel;
  f.params = {{"t", t},
              {"pa0_over_m", prm.pa0_over_m},
              {"sigma_over_m", prm.sigma_over_m},
              {"include_oscillatory", prm.include_oscillatory ? 1.0 : 0.0}};
  f.domain = {-12.0, 12.0, -12.0, 12.0};
  f.fn = [t, prm](double p, double q) { return qed_t_channel(p, q, t, prm); };
  return f;
}

cplx config_mode(int n, double x, double t, double sigma) {
  require(n >= 0, "config_mode: n must be nonnegative");
  require(sigma > 0.0, "config_mode: sigma must be positive");
  const double st = sigma * t;
  const double s = std::sqrt(1.0 + st * st);
  const double u = (t - x) / s;
  // (sqrt(pi) 2^n n!)^{-1/2} H_n(u) = h_n(u) e^{u^2/2}; the real Gaussian exponents cancel.
  const double hn = orthonormal_hermite(n, 1.0, u);
  const double d = x - t;
  const cplx expo = -I * static_cast<double>(n) * std::atan(st) + I * (x - 0.5 * t) / sigma +
                    I * st * d * d / (2.0 * s * s);
  return std::pow(I, n) * std::exp(expo) / std::sqrt(1.0 + I * st) * hn;
}

double unstable_delta(double p, double q, const UnstableParams& prm) {
  const double d = p - q;
  return std::sqrt(d * d + 1.0) - std::sqrt(p * p + prm.m_g * prm.m_g) -
         std::sqrt(q * q + prm.m_gamma * prm.m_gamma);
}

namespace {

cplx phi_aux(cplx x, double t) { return 0.5 * kPi / std::sqrt(x) * faddeeva(I * std::sqrt(x * t)); }

cplx cut_direct(cplx a, cplx b, double t, double gamma) {
  const cplx sb = std::sqrt(b);
  const cplx br = a * phi_aux(a, 2.0 * t) - a * phi_aux(b, 2.0 * t) -
                  (1.0 / sb) / 4.0 * (b - a) *
                      (2.0 * std::sqrt(2.0 * kPi * b * t) -
                       kPi * (4.0 * b * t - 1.0) * faddeeva(I * std::sqrt(2.0 * b * t)));
  const cplx ab = a - b;
  return -I * gamma * std::exp(-(a + b) * t) / (kPi * sb * ab * ab) * br;
}

}  // namespace

cplx unstable_cut(double p, double q, const UnstableParams& prm) {
  require(prm.gamma >= 0.0 && prm.t > 0.0, "unstable: need gamma >= 0 and t > 0");
  if (prm.gamma == 0.0) return 0.0;
  const double Eg = std::sqrt(p * p + prm.m_g * prm.m_g);
  const double Ega = std::sqrt(q * q + prm.m_gamma * prm.m_gamma);
  const double d = p - q;
  const double Ee = std::sqrt(d * d + 1.0);
  const cplx a = -I * (Eg + Ega), b = -I * Ee;
  // Removable double pole at a = b: mean over a circle around a keeps precision.
  const double r = std::min(0.05, 0.1 / prm.t);
  if (std::abs(a - b) >= 0.5 * r) return cut_direct(a, b, prm.t, prm.gamma);
  constexpr int K = 32;
  cplx s = 0.0;
  for (int k = 0; k < K; ++k) s += cut_direct(a + r * std::exp(I * (2.0 * kPi * k / K)), b, prm.t, prm.gamma);
  return s / static_cast<double>(K);
}

cplx unstable(double p, double q, const UnstableParams& prm) {
  require(prm.gamma >= 0.0, "unstable: Gamma must be nonnegative");
  require(prm.sigma > 0.0 && prm.m_g > 0.0 && prm.m_gamma > 0.0, "unstable: widths and masses must be positive");
  const double D = unstable_delta(p, q, prm);
  const double t = prm.t;
  cplx br;
  if (prm.gamma == 0.0) {
    br = 2.0 * I * t * sinc(D * t);
  } else {
    br = (std::exp(I * D * t) - std::exp(-I * D * t) * std::exp(-prm.gamma * t)) / (D - 0.5 * I * prm.gamma);
  }
  if (prm.include_cut) br += unstable_cut(p, q, prm);
  const double d = p - q;
  return std::exp(-d * d / (prm.sigma * prm.sigma)) * br;
}

double unstable_ridge(const UnstableParams& prm) {
  double lo = 0.0, hi = 10.0;
  auto g = [&](double x) { return unstable_delta(x, x, prm); };
  if (g(lo) <= 0.0 || g(hi) >= 0.0) throw NumericalError("unstable_ridge: no sign change on [0, 10]");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BipartiteAmplitude unstable_amplitude(const UnstableParams& prm) {
  BipartiteAmplitude f;
  f.variant = AmplitudeVariant::unstable;
  f.params = {{"t", prm.t},         {"gamma", prm.gamma}, {"m_g", prm.m_g},
              {"m_gamma", prm.m_gamma}, {"sigma", prm.sigma}, {"include_cut", prm.include_cut ? 1.0 : 0.0}};
  const double p0 = unstable_ridge(prm);
  f.domain = {std::max(0.0, p0 - 1.2), p0 + 1.2, std::max(0.0, p0 - 0.48), p0 + 0.48};
  f.fn = [prm](double p, double q) { return unstable(p, q, prm); };
  return f;
}

BipartiteAmplitude gaussian_product(double sigma1, double sigma2) {
  require(sigma1 > 0.0 && sigma2 > 0.0, "gaussian_product: widths must be positive");
  BipartiteAmplitude f;
  f.variant = AmplitudeVariant::gaussian_product;
  f.params = {{"sigma1", sigma1}, {"sigma2", sigma2}};
  f.domain = {-12.0 * sigma1, 12.0 * sigma1, -12.0 * sigma2, 12.0 * sigma2};
  f.fn = [sigma1, sigma2](double p, double q) -> cplx {
    return std::exp(-p * p / (2.0 * sigma1 * sigma1) - q * q / (2.0 * sigma2 * sigma2));
  };
  f.exact_norm2 = kPi * sigma1 * sigma2;
  return f;
}

BipartiteAmplitude delta_surrogate(double eps, double width) {
  require(eps > 0.0 && width > 0.0, "delta_surrogate: widths must be positive");
  BipartiteAmplitude f;
  f.variant = AmplitudeVariant::delta_surrogate;
  f.params = {{"eps", eps}, {"width", width}};
  const double R = 12.0 * width;
  f.domain = {-R, R, -R, R};
  f.fn = [eps, width](double p, double q) -> cplx {
    const double u = p - q, v = p + q;
    return std::exp(-u * u / (2.0 * eps * eps) - v * v / (8.0 * width * width));
  };
  f.exact_norm2 = kPi * eps * width;
  return f;
}

}  // namespace entangle
