#pragma once

#include "ppe/core/field.hpp"

namespace ppe {

/// Real-to-complex transform, coefficients scaled by 1/N.
Spectrum fft_forward(const Field& f);

/// Complex-to-real transform of a half spectrum.
Field fft_inverse(const Spectrum& s);

}  // namespace ppe
