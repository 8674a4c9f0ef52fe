#pragma once

#include <array>

#include "hydrostat/operators.hpp"

namespace hydrostat {

/// Physical parameters of the system. R1, R2 are the horizontal and vertical
/// Reynolds numbers, R3 the vertical eddy heat diffusivity coefficient,
/// f0 the Coriolis parameter and epsilon the strength of the auxiliary
/// horizontal temperature diffusion (epsilon = 0 selects the
/// vertical-diffusion-only system).
struct Params {
    double R1 = 1.0;
    double R2 = 1.0;
    double R3 = 1.0;
    double h = 1.0;
    double f0 = 1.0;
    double epsilon = 0.0;

    void validate() const {
        if (R1 <= 0 || R2 <= 0 || R3 <= 0 || h <= 0)
            throw std::invalid_argument("Params: R1, R2, R3, h must be positive");
        if (epsilon < 0)
            throw std::invalid_argument("Params: epsilon must be nonnegative");
    }
};

struct IncompatibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Prognostic state: horizontal velocity (even in z) and shifted temperature
/// (odd in z), with div_H(vbar) = 0. Immutable unit of evolution.
struct State {
    SpectralField3D v1;
    SpectralField3D v2;
    SpectralField3D T;
    Params params;
    double time = 0.0;

    const Grid3& grid() const { return v1.grid; }
};

/// Diagnostic fields reconstructed from a State.
struct DerivedFields {
    SpectralField3D w;   // vertical velocity, odd in z, w(+-h) = 0
    SpectralField3D p_s; // surface pressure, z-independent, zero mean
    SpectralField3D p;   // full pressure, d_z p = -T
};

/// Build a valid State from physical-space samples: transform, project the
/// parities (v -> even, T -> odd), Leray-project the barotropic velocity onto
/// divergence-free 2D fields, and dealias.
State make_state(const PhysicalField3D& v1_phys, const PhysicalField3D& v2_phys,
                 const PhysicalField3D& T_phys, const Params& params);

/// As make_state, but from spectral fields (used internally by the stepper's
/// re-projection).
void project_onto_constraints(SpectralField3D& v1, SpectralField3D& v2, SpectralField3D& T);

/// Remove the gradient part of the barotropic (m = 0) component of (f1, f2),
/// leaving div_H of the vertical mean zero. Returns the surface-pressure
/// field whose gradient was removed (zero-mean convention).
SpectralField3D project_barotropic_divfree(SpectralField3D& f1, SpectralField3D& f2);

/// w = -integral from -h to z of div_H(v); w(-h) = 0 by construction and
/// w(h) = -2h div_H(vbar) = 0 up to the constraint tolerance.
SpectralField3D compute_w(const State& state);

/// Surface pressure from the 2D Poisson problem Lap_H(p_s) = div_H(tendency)
/// and full pressure p = p_s - integral of T, so that d_z p + T = 0.
/// The tendency pair is the assembled barotropic explicit tendency before
/// projection (z-independent fields).
DerivedFields compute_pressure(const State& state, const SpectralField3D& tendency1,
                               const SpectralField3D& tendency2);

/// L2 norm of div_H of the vertical mean of (v1, v2).
double barotropic_divergence_norm(const SpectralField3D& v1, const SpectralField3D& v2);

/// Parity extension from the physical half-domain M x (-h, 0): reflect about
/// z = 0 with the requested parity so the extension is 2h-periodic. Odd
/// extensions require the field to vanish at z = -h and z = 0 (within tol).
PhysicalField3D extend_to_full_domain(const HalfDomainField& half, Parity parity,
                                      double tol = 1e-8);
/// Restriction back to M x [-h, 0]; the round trip with extend is identity.
HalfDomainField restrict_to_half(const PhysicalField3D& full);

enum class ShiftDirection { Shift, Unshift };

/// The temperature shift T -> T + z/h (and its inverse). With the physical
/// boundary values T(-h) = 1, T(0) = 0 the shifted field vanishes at both
/// boundaries, making the odd extension admissible.
HalfDomainField shift_temperature(const HalfDomainField& T_raw, ShiftDirection dir);

} // namespace hydrostat
