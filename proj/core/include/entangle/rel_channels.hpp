#pragma once

#include <array>
#include <vector>

#include "entangle/qudit_core.hpp"

namespace entangle {

enum class Spin { up = 0, down = 1 };

struct BoostParams {
  double w_over_m = 0.2;
  double alpha = 0.0;
};

struct MagneticChannelParams {
  double m = 100.0;
  double p0 = 10.0;
  double sigma = 2.0;
  double L = 3.0;
  double gammaB0 = 0.2;
};

struct OpticalChannelParams {
  double p0 = 10.0;
  double sigma = 2.0;
  double w0 = 10.0;
  double BtildeL = 1.0;
  double window = 1e-3;  // exclusion half-width relative to w0
};

// Spin block left after tracing the momentum of a boosted Gaussian packet, for |bra><ket|.
Eigen::Matrix2cd wigner_block(Spin bra, Spin ket, double nz);
double nz_prime(const BoostParams& p);

// C[i][j][k][l] multiplies |i j><k l| (0 = up); returns sum C_ijkl block(i,k) (x) block(j,l).
using SpinCoefficients = std::array<std::array<std::array<std::array<cplx, 2>, 2>, 2>, 2>;
SpinCoefficients coefficients_from_matrix(const Eigen::Matrix4cd& rho);
DensityMatrix boost_two_qubit(const SpinCoefficients& C, double nz);

// Werner state with singlet fidelity F in the basis (uu, ud, du, dd).
Eigen::Matrix4cd werner(double F);
DensityMatrix boosted_werner(double F, double nz);
std::array<double, 4> ppt_eigenvalues(double F, double nz);
double distill_boundary(double nz);

double spinmom_negativity_bimodal(double theta1, double theta2);
double spinmom_negativity(const std::vector<double>& thetas);
// Continuous limit: weights |psi(p)|^2 on nodes with rotation angles theta(p).
double spinmom_negativity_continuous(const std::vector<double>& weights, const std::vector<double>& thetas);

// Square-barrier transmission / reflection for spin s = +-1/2.
cplx transmission(double p, double s, const MagneticChannelParams& ch);
cplx reflection(double p, double s, const MagneticChannelParams& ch);
double fermion_negativity(const MagneticChannelParams& ch, int nodes = 4001);
double photon_negativity(const OpticalChannelParams& ch);
DensityMatrix no_signalling_bob(const MagneticChannelParams& ch, int nodes = 4001);

}  // namespace entangle
