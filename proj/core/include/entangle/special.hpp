#pragma once

#include "entangle/common.hpp"

namespace entangle {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz), relative accuracy ~1e-13.
cplx faddeeva(cplx z);

// sin(z)/z with a series branch near the removable point.
double sinc(double x);
cplx sinc(cplx z);

}  // namespace entangle
