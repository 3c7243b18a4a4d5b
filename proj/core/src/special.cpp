#include "entangle/special.hpp"

#include <array>
#include <cmath>

namespace entangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kTerms = 64;

// Weideman rational expansion: w(z) = 2 p(Z)/(L - iz)^2 + pi^{-1/2}/(L - iz), Z = (L + iz)/(L - iz).
struct WeidemanTable {
  double L;
  std::array<double, kTerms + 1> a{};  // a[1..N]

  WeidemanTable() {
    const int M = 2 * kTerms;
    L = std::sqrt(kTerms / std::sqrt(2.0));
    for (int j = 1; j <= kTerms; ++j) {
      double s = 0.0;
      for (int k = -M + 1; k <= M - 1; ++k) {
        const double theta = k * kPi / M;
        const double t = L * std::tan(0.5 * theta);
        const double f = std::exp(-t * t) * (L * L + t * t);
        s += f * std::cos(j * theta);
      }
      a[j] = s / (2.0 * M);
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

}  // namespace

cplx faddeeva(cplx z) {
  if (z.imag() < 0.0) return 2.0 * std::exp(-z * z) - faddeeva(-z);
  const WeidemanTable& tb = table();
  const cplx iz(-z.imag(), z.real());
  const cplx den = tb.L - iz;
  const cplx Z = (tb.L + iz) / den;
  cplx p = 0.0;
  for (int j = kTerms; j >= 1; --j) p = p * Z + tb.a[j];
  return 2.0 * p / (den * den) + 1.0 / (std::sqrt(kPi) * den);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

}  // namespace entangle
