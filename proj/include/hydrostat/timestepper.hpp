#pragma once

#include <functional>
#include <optional>

#include "hydrostat/dynamics.hpp"

namespace hydrostat {

enum class Scheme { ImexEuler, ImexRk2 };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

/// Time integration settings. dt <= 0 selects adaptive advective-CFL
/// stepping with safety factor cfl_safety, capped at dt_max.
struct StepperConfig {
    Scheme scheme = Scheme::ImexRk2;
    double dt = 0.0;
    double cfl_safety = 0.5;
    double dt_max = 1e-2;
    double t_end = 1.0;

    void validate() const;
};

/// Raised when the solution norm exceeds the blow-up threshold or becomes
/// non-finite; carries the last valid state reached.
struct BlowupError : std::runtime_error {
    State last_valid;
    BlowupError(std::string msg, State s)
        : std::runtime_error(std::move(msg)), last_valid(std::move(s)) {}
};

/// Linear symbols treated implicitly: the momentum operator
/// L1 = -Lap_H/R1 - d_zz/R2 and the temperature operator
/// L2 = -d_zz/R3 - epsilon * Lap_H.
double lambda_v(const Params& p, double kx, double ky, double kz);
double lambda_T(const Params& p, double kx, double ky, double kz);

/// Advance one step of size dt. Both schemes treat the diffusion operators
/// implicitly (diagonal per Fourier mode) and the rest explicitly; the state
/// is re-projected onto the parity and divergence constraints after every
/// implicit solve.
State step(const State& state, double dt, Scheme scheme, const SourceSpec* source = nullptr);

/// Advective CFL limit: cfl_safety * min(dx/|v1|, dy/|v2|, dz/|w|)_max,
/// capped at dt_max (also returned when the velocity vanishes).
double cfl_dt(const State& state, double cfl_safety, double dt_max);

/// Step repeatedly until t_end (the final step is shortened to land on it
/// exactly). The observer, if set, is called on the initial state and after
/// every step. Throws BlowupError when the solution escapes.
using Observer = std::function<void(const State&)>;
State integrate(State state, const StepperConfig& cfg, const SourceSpec* source = nullptr,
                const Observer& observer = nullptr);

} // namespace hydrostat
