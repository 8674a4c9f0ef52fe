#pragma once

#include <vector>

#include "hydrostat/dynamics.hpp"

namespace hydrostat {

/// Energy-budget diagnostics of a single state. The dissipation terms are the
/// quadratic forms of the implicit operators; the coupling term is the
/// buoyancy production <grad_H(int T), v>. residual_v / residual_T are the
/// semi-discrete budget residuals
///   |<E_v, v> + diss_v - coupling|   and   |<E_T, T> + diss_T - source_T|
/// with E the assembled explicit tendency and source_T = (1/h)<int div_H v, T>;
/// both vanish to round-off for the dealiased spectral discretization.
struct EnergyReport {
    double time = 0.0;
    double v_L2 = 0.0, v_H1 = 0.0, v_H2 = 0.0;
    double T_L2 = 0.0, T_H1 = 0.0, T_H2 = 0.0;
    double diss_v_H = 0.0; // (1/R1) ||grad_H v||^2
    double diss_v_z = 0.0; // (1/R2) ||d_z v||^2
    double diss_T_z = 0.0; // (1/R3) ||d_z T||^2
    double diss_T_H = 0.0; // epsilon ||grad_H T||^2
    double coupling = 0.0;
    double source_T = 0.0;
    double residual_v = 0.0;
    double residual_T = 0.0;
};

/// Norms of the vorticity-type fields eta = d_x u2 - d_y u1 and
/// theta = div_H u + R1 T (u = d_z v), the blow-up functionals X, Y,
/// Z = log X with their coefficient C_R, t-weighted traces, and the
/// anisotropic-inequality ratios (both forms) on the (eta, v1, theta) triple.
struct RegularityReport {
    double time = 0.0;
    double eta_L2 = 0.0, eta_H1 = 0.0, eta_H2 = 0.0;
    double theta_L2 = 0.0, theta_H1 = 0.0, theta_H2 = 0.0;
    double C_R = 0.0;
    double X = 1.0;
    double Y = 0.0;
    double Z = 0.0;
    double t2_eta_theta_H2 = 0.0; // t^2 (||eta||_H2^2 + ||theta||_H2^2)
    double t_u_H2 = 0.0;          // t ||u||_H2^2
    double aniso_ratio1 = 0.0;
    double aniso_ratio2 = 0.0;
};

EnergyReport norms(const State& state);

/// eta and theta as spectral fields (both odd in z).
std::pair<SpectralField3D, SpectralField3D> eta_theta(const State& state);

RegularityReport regularity_functionals(const State& state, double t);

/// Ratios of the anisotropic estimate
///   LHS  = |int_M (int f dz)(int g*hh dz) dxdy|
///   RHS1 = ||f||^(1/2)(||f||^(1/2)+||grad_H f||^(1/2)) ||g||
///          ||hh||^(1/2)(||hh||^(1/2)+||grad_H hh||^(1/2))
///   RHS2 = ||f|| ||g||^(1/2)(||g||^(1/2)+||grad_H g||^(1/2))
///          ||hh||^(1/2)(||hh||^(1/2)+||grad_H hh||^(1/2))
/// Returns {LHS/RHS1, LHS/RHS2}; 0 when LHS = 0.
std::pair<double, double> anisotropic_ratio(const SpectralField3D& f, const SpectralField3D& g,
                                            const SpectralField3D& hh);

/// Residuals of the energy identities measured on a trajectory: centered
/// finite differences of the sampled energies against the instantaneous
/// budget at the interior samples. Requires uniformly spaced samples.
struct IdentityResiduals {
    std::vector<double> time;       // interior sample times
    std::vector<double> residual_v; // |d/dt(1/2||v||^2) + diss_v - coupling|
    std::vector<double> residual_T;
    double max_residual_v = 0.0;
    double max_residual_T = 0.0;
};
IdentityResiduals energy_identity_residual(const std::vector<EnergyReport>& samples);

/// Difference d(t) = ||vA-vB||^2 + ||TA-TB||^2 between two trajectories,
/// together with the envelope
///   e(t) = d(0) exp(int_0^t (1 + ||vB||_H2^4 + ||TB||_H2^4) ds)
/// (trapezoidal quadrature). Flags samples with d(t) > multiplier * e(t).
struct GronwallReport {
    std::vector<double> time;
    std::vector<double> d;
    std::vector<double> envelope;
    bool within_envelope = true;
};
GronwallReport difference_gronwall(const std::vector<State>& trajA,
                                   const std::vector<State>& trajB,
                                   double multiplier = 10.0);

} // namespace hydrostat
