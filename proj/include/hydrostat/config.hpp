#pragma once

#include <string>
#include <vector>

#include "hydrostat/timestepper.hpp"

namespace hydrostat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full description of a run, parsed from a key = value text file.
/// Recognized keys (defaults in parentheses):
///   nx, ny, nz (16)            grid dimensions, even, >= 4
///   h (1.0)                    domain half-height, box is (0,1)^2 x (-h,h)
///   R1, R2, R3 (1.0)           Reynolds / diffusivity numbers
///   f0 (1.0)                   Coriolis parameter
///   epsilon (0.0)              horizontal temperature diffusion strength
///   preset (zero)              zero | conduction | shear | manufactured | file
///   ic_file ()                 snapshot path, required for preset = file
///   ic_amplitude (1.0)         amplitude of the preset fields
///   scheme (imex_rk2)          imex_euler | imex_rk2
///   dt (0.0)                   fixed step; <= 0 selects adaptive CFL stepping
///   cfl_safety (0.5)           CFL factor for adaptive stepping, in (0, 1]
///   dt_max (1e-2)              adaptive step cap
///   t_end (1.0)                final time
///   sample_every (1)           diagnostic cadence in steps
///   snapshot_every (0)         snapshot cadence in steps (0 = final only)
///   out_dir (.)                artifact directory
///   epsilons ()                comma-separated nonincreasing list for sweeps
///   perturb_magnitude (0.0)    perturbation size for dependence studies
///   envelope_multiplier (10.0) Gronwall envelope tolerance factor
///   seed (12345)               RNG seed for perturbation fields
struct RunConfig {
    int nx = 16, ny = 16, nz = 16;
    Params params;
    std::string preset = "zero";
    std::string ic_file;
    double ic_amplitude = 1.0;
    StepperConfig stepper;
    int sample_every = 1;
    int snapshot_every = 0;
    std::string out_dir = ".";
    std::vector<double> epsilons;
    double perturb_magnitude = 0.0;
    double envelope_multiplier = 10.0;
    unsigned long seed = 12345;

    Grid3 grid() const { return Grid3(nx, ny, nz, params.h); }
    void validate() const;
};

/// Parse key = value text ('#' starts a comment). Unknown keys, malformed
/// values and constraint violations raise ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace hydrostat
