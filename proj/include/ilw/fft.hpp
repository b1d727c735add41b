#ifndef ILW_FFT_HPP
#define ILW_FFT_HPP

#include "ilw/grid.hpp"

namespace ilw {

// Discrete realization of f_hat(k) = int e^{-ikx} f(x) dx on the periodic
// grid: u_hat[i] = h * (-1)^{f_i} * DFT(u)[i], so Parseval reads
// h*sum u_j^2 = (1/L)*sum |u_hat|^2. Round trip is exact to rounding.
SpectralField transform(const RealField& u);
RealField inverse_transform(const SpectralField& s);

// Same transforms for complex-valued physical fields.
SpectralField transform(const ComplexField& u);
ComplexField inverse_transform_complex(const SpectralField& s);

// In-place unnormalized c2c transforms used by the hot loops. Plans are cached
// per size behind a mutex; FFTW_ESTIMATE keeps planning deterministic.
void fft_forward_raw(int n, cplx* data);
void fft_backward_raw(int n, cplx* data);

}  // namespace ilw

#endif
