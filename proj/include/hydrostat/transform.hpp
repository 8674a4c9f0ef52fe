#pragma once

#include "hydrostat/field.hpp"

namespace hydrostat {

/// Forward transform: collocation samples -> Fourier coefficients.
/// Normalized so that a constant field c has coefficient c at mode (0,0,0).
SpectralField3D forward(const PhysicalField3D& f, Parity parity = Parity::None);

/// Inverse transform: Fourier coefficients -> collocation samples.
/// inverse(forward(f)) == f to round-off; the imaginary part left over from
/// conjugate-symmetry round-off is discarded.
PhysicalField3D inverse(const SpectralField3D& f);

} // namespace hydrostat
