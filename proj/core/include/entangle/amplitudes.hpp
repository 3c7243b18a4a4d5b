#pragma once

#include "entangle/cv_schmidt.hpp"

namespace entangle {

// Dimensionless biphoton amplitude e^{-(p+q)^2} sinc[(Lp p + Lq q)/2]; ||f||^2 known exactly.
BipartiteAmplitude pdc(double L_p, double L_q);
// From (k - k'_o)L, (k - k'_e)L [ps] and pump width sigma [1/ps].
BipartiteAmplitude pdc_from_physical(double ko_L, double ke_L, double sigma);

struct QedParams {
  double pa0_over_m = 0.002;
  double sigma_over_m = 0.0002;
  bool include_oscillatory = true;
};

// t-channel amplitude at dimensionless time t (constant prefactors dropped).
cplx qed_t_channel(double p, double q, double t, const QedParams& prm = {});
BipartiteAmplitude qed_amplitude(double t, const QedParams& prm = {});

// Configuration-space orthonormal function ~O_n(x, t) with width parameter sigma.
cplx config_mode(int n, double x, double t, double sigma);

struct UnstableParams {
  double t = 100.0;
  double gamma = 0.0;
  double m_g = 0.7;
  double m_gamma = 0.1;
  double sigma = 0.2;
  bool include_cut = false;
};

double unstable_delta(double p, double q, const UnstableParams& prm);
// Power-law branch-cut correction to the decay bracket.
cplx unstable_cut(double p, double q, const UnstableParams& prm);
cplx unstable(double p, double q, const UnstableParams& prm);
// Momentum p0 where the resonance ridge Delta(p, p) = 0 crosses the diagonal.
double unstable_ridge(const UnstableParams& prm);
BipartiteAmplitude unstable_amplitude(const UnstableParams& prm);

BipartiteAmplitude gaussian_product(double sigma1, double sigma2);

// Narrow Gaussian in p - q times a broad Gaussian in p + q (tends to delta(p - q)).
BipartiteAmplitude delta_surrogate(double eps, double width);

}  // namespace entangle
