#pragma once

#include "ell/field.hpp"

namespace ell::fft {

/// out(k) = n^{-d} sum_j in(j) e^{-2 pi i k.x_j}. in and out may alias.
void forward(const GridSpec& g, const cplx* in, cplx* out);
/// out(j) = sum_k in(k) e^{+2 pi i k.x_j}. in and out may alias.
void backward(const GridSpec& g, const cplx* in, cplx* out);

}  // namespace ell::fft
