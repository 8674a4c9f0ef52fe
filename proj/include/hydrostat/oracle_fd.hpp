#pragma once

#include "hydrostat/state.hpp"

namespace hydrostat {

/// Physical-space mirror of State used by the independent low-order solver.
/// Same constraints (v even in z, T odd, div_H of the vertical mean zero),
/// enforced with grid-level finite-difference operators.
struct FdState {
    PhysicalField3D v1;
    PhysicalField3D v2;
    PhysicalField3D T;
    Params params;
    double time = 0.0;

    const Grid3& grid() const { return v1.grid; }
};

/// Periodic difference quotient (1/l)(f(x + l e_axis) - f(x)). l must be a
/// nonzero multiple of the grid spacing (no interpolation); the discrete
/// adjoint identity <d_l f, g> = -<f, d_{-l} g> and the product rule
/// d_l(fg) = f d_l(g) + g(. + l e) d_l(f) then hold exactly.
PhysicalField3D difference_quotient(const PhysicalField3D& f, Axis axis, double l);

/// Build a constrained FdState from raw samples: symmetrize parities and
/// remove the gradient part of the barotropic velocity with a central
/// finite-difference Poisson solve.
FdState make_fd_state(const PhysicalField3D& v1, const PhysicalField3D& v2,
                      const PhysicalField3D& T, const Params& params);

/// Vertical velocity by trapezoidal integration of -div_H v from z = -h.
PhysicalField3D fd_w(const FdState& state);

/// One explicit RK4 step of the central-difference discretization (diffusion
/// explicit too; intended for small grids and diffusive-stability dt only).
FdState fd_step(const FdState& state, double dt);

/// Relative L2 differences between the spectral and FD solutions at a common
/// time, measured on the FD grid (the spectral solution is restricted to it;
/// FD grid dims must divide the spectral dims).
struct CrossValidationReport {
    double rel_v = 0.0;
    double rel_T = 0.0;
    double rel_w = 0.0;
};
CrossValidationReport cross_validate(const FdState& fd_initial, const State& sp_initial,
                                     double t_end, double dt_fd, double dt_sp);

/// Point restriction of a field to a coarser grid whose nodes are a subset of
/// the fine grid's nodes.
PhysicalField3D restrict_grid(const PhysicalField3D& fine, const Grid3& coarse);

} // namespace hydrostat
