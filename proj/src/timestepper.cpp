#include "hydrostat/timestepper.hpp"

#include <cmath>

namespace hydrostat {

namespace {

// Implicit stage weight of the two-register ARK scheme below. The linear
// stability function is R(z) = (1 + (2g-1)z + (g^2-2g+1/2)z^2) / (1+gz)^2
// with error constant g^2 - g + 1/6 ~ -2e-3; the scheme is second order,
// A-stable, and damps the stiff limit (|R(inf)| < 1).
constexpr double kGamma = 0.78519;

constexpr double kBlowupNorm = 1e12;

using Symbol = double (*)(const Params&, double, double, double);

// out = (out + extra) / (1 + a * lambda) per mode, with lambda >= 0.
void implicit_solve(SpectralField3D& f, double a, Symbol lam, const Params& p) {
    const Grid3& g = f.grid;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                f.at(ix, iy, iz) /=
                    1.0 + a * lam(p, kappa_x(g, ix), kappa_y(g, iy), kappa_z(g, iz));
}

// Returns lambda * f per mode (the negated implicit operator applied to f).
SpectralField3D apply_lambda(const SpectralField3D& f, Symbol lam, const Params& p) {
    const Grid3& g = f.grid;
    SpectralField3D out(g, f.parity);
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                out.at(ix, iy, iz) = lam(p, kappa_x(g, ix), kappa_y(g, iy), kappa_z(g, iz)) *
                                     f.at(ix, iy, iz);
    return out;
}

void finish_state(State& s) {
    project_onto_constraints(s.v1, s.v2, s.T);
    dealias_in_place(s.v1);
    dealias_in_place(s.v2);
    dealias_in_place(s.T);
}

void check_finite(const State& s) {
    const double n = l2_norm(s.v1) + l2_norm(s.v2) + l2_norm(s.T);
    if (!std::isfinite(n) || n > kBlowupNorm)
        throw BlowupError("solution norm exceeded the blow-up threshold at t = " +
                              std::to_string(s.time),
                          s);
}

State step_euler(const State& state, double dt, const SourceSpec* source) {
    Tendency e = tendency(state, source);
    State out = state;
    out.v1 += dt * e.dv1;
    out.v2 += dt * e.dv2;
    out.T += dt * e.dT;
    implicit_solve(out.v1, dt, lambda_v, state.params);
    implicit_solve(out.v2, dt, lambda_v, state.params);
    implicit_solve(out.T, dt, lambda_T, state.params);
    finish_state(out);
    out.time = state.time + dt;
    return out;
}

State step_rk2(const State& state, double dt, const SourceSpec* source) {
    const Params& p = state.params;
    const double g = kGamma;

    // Stage 1 tendency
    Tendency e1 = tendency(state, source);

    // Stage 2: U2 = (U + dt*g*E1) / (1 + dt*g*L)
    State s2 = state;
    s2.v1 += (dt * g) * e1.dv1;
    s2.v2 += (dt * g) * e1.dv2;
    s2.T += (dt * g) * e1.dT;
    implicit_solve(s2.v1, dt * g, lambda_v, p);
    implicit_solve(s2.v2, dt * g, lambda_v, p);
    implicit_solve(s2.T, dt * g, lambda_T, p);
    finish_state(s2);
    s2.time = state.time + g * dt;

    Tendency e2 = tendency(s2, source);
    SpectralField3D l2v1 = apply_lambda(s2.v1, lambda_v, p);
    SpectralField3D l2v2 = apply_lambda(s2.v2, lambda_v, p);
    SpectralField3D l2T = apply_lambda(s2.T, lambda_T, p);

    // Stage 3: U3 = (U + dt*(1-g)*E2 - dt*(1-2g)*L*U2) / (1 + dt*g*L)
    State s3 = state;
    s3.v1 += (dt * (1.0 - g)) * e2.dv1 - (dt * (1.0 - 2.0 * g)) * l2v1;
    s3.v2 += (dt * (1.0 - g)) * e2.dv2 - (dt * (1.0 - 2.0 * g)) * l2v2;
    s3.T += (dt * (1.0 - g)) * e2.dT - (dt * (1.0 - 2.0 * g)) * l2T;
    implicit_solve(s3.v1, dt * g, lambda_v, p);
    implicit_solve(s3.v2, dt * g, lambda_v, p);
    implicit_solve(s3.T, dt * g, lambda_T, p);
    finish_state(s3);
    s3.time = state.time + (1.0 - g) * dt;

    Tendency e3 = tendency(s3, source);
    SpectralField3D l3v1 = apply_lambda(s3.v1, lambda_v, p);
    SpectralField3D l3v2 = apply_lambda(s3.v2, lambda_v, p);
    SpectralField3D l3T = apply_lambda(s3.T, lambda_T, p);

    // Update: U+ = U + dt/2 (E2 + E3) - dt/2 (L*U2 + L*U3)
    State out = state;
    out.v1 += (0.5 * dt) * (e2.dv1 + e3.dv1) - (0.5 * dt) * (l2v1 + l3v1);
    out.v2 += (0.5 * dt) * (e2.dv2 + e3.dv2) - (0.5 * dt) * (l2v2 + l3v2);
    out.T += (0.5 * dt) * (e2.dT + e3.dT) - (0.5 * dt) * (l2T + l3T);
    finish_state(out);
    out.time = state.time + dt;
    return out;
}

} // namespace

Scheme scheme_from_string(const std::string& s) {
    if (s == "imex_euler") return Scheme::ImexEuler;
    if (s == "imex_rk2") return Scheme::ImexRk2;
    throw std::invalid_argument("unknown scheme: " + s);
}

std::string to_string(Scheme s) {
    return s == Scheme::ImexEuler ? "imex_euler" : "imex_rk2";
}

void StepperConfig::validate() const {
    if (cfl_safety <= 0.0 || cfl_safety > 1.0)
        throw std::invalid_argument("StepperConfig: cfl_safety must lie in (0, 1]");
    if (dt_max <= 0.0) throw std::invalid_argument("StepperConfig: dt_max must be positive");
    if (t_end < 0.0) throw std::invalid_argument("StepperConfig: t_end must be nonnegative");
}

double lambda_v(const Params& p, double kx, double ky, double kz) {
    return (kx * kx + ky * ky) / p.R1 + kz * kz / p.R2;
}

double lambda_T(const Params& p, double kx, double ky, double kz) {
    return kz * kz / p.R3 + p.epsilon * (kx * kx + ky * ky);
}

State step(const State& state, double dt, Scheme scheme, const SourceSpec* source) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    State out = (scheme == Scheme::ImexEuler) ? step_euler(state, dt, source)
                                              : step_rk2(state, dt, source);
    check_finite(out);
    return out;
}

double cfl_dt(const State& state, double cfl_safety, double dt_max) {
    const Grid3& g = state.grid();
    double dt = dt_max;
    const double u1 = max_abs(state.v1);
    const double u2 = max_abs(state.v2);
    const double uw = max_abs(compute_w(state));
    if (u1 > 0.0) dt = std::min(dt, cfl_safety * g.dx() / u1);
    if (u2 > 0.0) dt = std::min(dt, cfl_safety * g.dy() / u2);
    if (uw > 0.0) dt = std::min(dt, cfl_safety * g.dz() / uw);
    return dt;
}

State integrate(State state, const StepperConfig& cfg, const SourceSpec* source,
                const Observer& observer) {
    cfg.validate();
    if (observer) observer(state);
    const double t_end = cfg.t_end;
    while (state.time < t_end - 1e-12 * std::max(1.0, t_end)) {
        double dt = (cfg.dt > 0.0) ? cfg.dt : cfl_dt(state, cfg.cfl_safety, cfg.dt_max);
        dt = std::min(dt, t_end - state.time);
        state = step(state, dt, cfg.scheme, source);
        if (observer) observer(state);
    }
    return state;
}

} // namespace hydrostat
