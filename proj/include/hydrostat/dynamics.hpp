#pragma once

#include <functional>
#include <optional>

#include "hydrostat/state.hpp"

namespace hydrostat {

/// Optional analytic source terms (momentum and heat) as callables of
/// (x, y, z, t). Q_v must be even in z and Q_T odd, within tolerance.
struct SourceSpec {
    using Field = std::function<double(double, double, double, double)>;
    Field q_v1;
    Field q_v2;
    Field q_T;

    bool empty() const { return !q_v1 && !q_v2 && !q_T; }
};

/// Explicit right-hand side of the pressure-eliminated system, excluding the
/// stiff linear operators (handled implicitly by the stepper).
struct Tendency {
    SpectralField3D dv1; // even
    SpectralField3D dv2; // even
    SpectralField3D dT;  // odd
    SpectralField3D p_s; // surface pressure removed from the barotropic part
    // barotropic (z-independent) and baroclinic parts of the projected
    // momentum tendency; bar + tilde reconstructs (dv1, dv2)
    SpectralField3D bar_dv1, bar_dv2;
    SpectralField3D tilde_dv1, tilde_dv2;
};

/// Assemble the explicit tendency: advection (v.grad_H)v + w d_z v with w
/// reconstructed from v, Coriolis f0 k x v, the buoyancy/pressure gradient
/// -grad_H(p_s - int T), temperature advection v.grad_H T + w(d_z T + 1/h),
/// and optional sources. Nonlinear products are formed in physical space and
/// dealiased; the barotropic momentum component is Leray-projected.
Tendency tendency(const State& state, const SourceSpec* source = nullptr);

/// Vertical-average split of a tendency's components.
struct TendencySplit {
    SpectralField3D bar_dv1, bar_dv2, bar_dT;
    SpectralField3D tilde_dv1, tilde_dv2, tilde_dT;
};
TendencySplit barotropic_baroclinic_split(const Tendency& t);

} // namespace hydrostat
