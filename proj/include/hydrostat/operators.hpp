#pragma once

#include <functional>
#include <utility>

#include "hydrostat/field.hpp"

namespace hydrostat {

enum class Axis { X, Y, Z };

/// Raised when an operator precondition is violated (e.g. a nonzero vertical
/// mean handed to the primitive-from-bottom integral).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical wavevector components: (2*pi*kx, 2*pi*ky, m*pi/h).
double kappa_x(const Grid3& g, int ix);
double kappa_y(const Grid3& g, int iy);
double kappa_z(const Grid3& g, int iz);

/// Spectral derivative: multiplies coefficients by (i*kappa)^order.
/// Odd-order derivatives zero the Nyquist mode on their axis; a z-derivative
/// of odd order flips the parity tag.
SpectralField3D derivative(const SpectralField3D& f, Axis axis, int order = 1);

/// F(z) = integral of g from -h to z. Requires zero vertical mean (the m = 0
/// coefficient of every horizontal mode below tol), so F is 2h-periodic.
/// F(-h) = 0 by construction and dF/dz = g.
SpectralField3D vertical_integral_from_bottom(const SpectralField3D& g, double tol = 1e-10);

/// Decomposition f = bar + tilde with bar the vertical average (z-independent)
/// and tilde the fluctuation; L2-orthogonal.
std::pair<SpectralField3D, SpectralField3D> vertical_average_split(const SpectralField3D& f);

/// L2-orthogonal projection onto the even or odd-in-z subspace.
SpectralField3D parity_project(const SpectralField3D& f, Parity parity);
/// L2 norm of the component discarded by parity_project.
double parity_residual(const SpectralField3D& f, Parity parity);

/// 2/3-rule truncation: zeroes every mode with |kx| > nx/3, |ky| > ny/3 or
/// |m| > nz/3. Idempotent.
SpectralField3D dealias(const SpectralField3D& f);
void dealias_in_place(SpectralField3D& f);
bool is_dealiased_mode(const Grid3& g, int ix, int iy, int iz);

/// Spectral (Parseval) norms and inner products on Omega.
double l2_norm(const SpectralField3D& f);
double l2_inner(const SpectralField3D& f, const SpectralField3D& g);
/// Sobolev norm with the physical wavevector: sum (1+|kappa|^2)^s |c|^2.
double sobolev_norm(const SpectralField3D& f, int s);
/// Weighted seminorm: sqrt(2h * sum w(kappa) |c|^2) for a symbol weight.
double symbol_norm(const SpectralField3D& f,
                   const std::function<double(double, double, double)>& weight);

/// Max absolute value over collocation points (goes through physical space).
double max_abs(const SpectralField3D& f);

} // namespace hydrostat
