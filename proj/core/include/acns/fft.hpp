#pragma once

#include <complex>

#include "acns/grid.hpp"

namespace acns::fft {

/// Row-wise real-to-complex DFT along x (one transform per y node).
/// Normalization: mode amplitudes equal continuum Fourier coefficients of a
/// function on [-pi, pi), i.e. f(x) = sum_k fhat_k e^{ikx}.
/// phys holds nx*ny reals (y-major), spec holds (nx/2+1)*ny complex rows.
void forward(const Grid& grid, const double* phys, std::complex<double>* spec);

/// Inverse of forward; spec is left untouched.
void inverse(const Grid& grid, const std::complex<double>* spec, double* phys);

}  // namespace acns::fft
