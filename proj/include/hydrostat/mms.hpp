#pragma once

#include "hydrostat/dynamics.hpp"

namespace hydrostat {

/// Steady manufactured solution used for spatial-convergence verification:
///   v1 = a (sin(2 pi x) cos(pi z/h) + cos(2 pi y) cos(3 pi z/h))
///   v2 = a (cos(2 pi x) cos(3 pi z/h) + sin(2 pi y) cos(pi z/h))
///   T  = b (cos(2 pi x) sin(pi z/h) + sin(2 pi y) sin(3 pi z/h))
/// The fields satisfy the parity and barotropic constraints exactly (the
/// vertical means vanish). The sources Q make the triple an exact steady
/// state of the full nonlinear system; their quadratic terms occupy modes up
/// to (2, 2, 6), so they are fully resolved on grids of 32 and coarser grids
/// truncate them.
struct ManufacturedSolution {
    Params params;
    double a = 0.1;
    double b = 0.05;

    double v1(double x, double y, double z) const;
    double v2(double x, double y, double z) const;
    double T(double x, double y, double z) const;
    double w(double x, double y, double z) const;

    double Qv1(double x, double y, double z) const;
    double Qv2(double x, double y, double z) const;
    double QT(double x, double y, double z) const;

    /// Time-independent SourceSpec wrapping the Q fields.
    SourceSpec source() const;

    /// The manufactured fields sampled and projected into a State.
    State initial_state(const Grid3& grid) const;

    /// Max-norm discrepancy between a state and the manufactured fields,
    /// measured on the state's collocation grid.
    double error(const State& state) const;
};

} // namespace hydrostat
