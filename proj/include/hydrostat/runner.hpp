#pragma once

#include "hydrostat/config.hpp"
#include "hydrostat/diagnostics.hpp"
#include "hydrostat/oracle_fd.hpp"

namespace hydrostat {

/// Number of worker threads for sweep/study members: HYDROSTAT_THREADS if
/// set (>= 1), otherwise the hardware concurrency.
int worker_threads();

/// Initial state and optional source implied by the config's preset.
State make_initial_state(const RunConfig& cfg);
SourceSpec make_source(const RunConfig& cfg);

/// Deterministic band-limited perturbation fields (parity-correct), scaled
/// so the combined L2 norm equals `magnitude`.
State perturb_state(const State& base, double magnitude, unsigned long seed);

/// A single run's in-memory results; artifacts (diagnostics.csv,
/// summary.json, snapshots) are written under cfg.out_dir.
struct RunResult {
    std::vector<EnergyReport> energy;
    std::vector<RegularityReport> regularity;
    std::vector<State> states; // states at the sampled times
    State final_state;
    bool blew_up = false;
    long steps = 0;
    double wall_time_s = 0.0;
};

/// Execute one run: integrate, sample diagnostics every cfg.sample_every
/// steps, write CSV/JSON artifacts and snapshots. On blow-up the partial
/// artifacts are flushed and blew_up is set (no throw). `resume_path`
/// restarts from a snapshot; `keep_states` controls trajectory retention.
RunResult run(const RunConfig& cfg, const std::string& resume_path = "", bool quiet = false,
              bool keep_states = true);

/// Epsilon sweep from shared initial data; members run concurrently (capped
/// by worker_threads). Writes sweep.csv under cfg.out_dir.
struct SweepEntry {
    double epsilon = 0.0;
    double diff_from_limit = 0.0; // ||(v_eps,T_eps)-(v_0,T_0)||_L2 at t_end
    double sup_H2 = 0.0;          // sup over sampled times of sqrt(v_H2^2+T_H2^2)
    bool failed = false;
    std::string error;
};
struct SweepResult {
    std::vector<SweepEntry> entries; // same order as cfg.epsilons
};
SweepResult epsilon_sweep(const RunConfig& cfg, bool quiet = false);

/// Continuous-dependence study: base vs perturbed trajectory, Gronwall
/// envelope check. Writes dependence.csv under cfg.out_dir.
struct DependenceResult {
    GronwallReport gronwall;
    double final_difference = 0.0; // sqrt(d) at t_end
    bool within_envelope = true;
};
DependenceResult dependence_study(const RunConfig& cfg, bool quiet = false);

/// Temporal self-convergence: runs at dt, dt/2, dt/4 against a dt/16
/// reference, reporting L2 errors at t_end and observed orders. Writes
/// convergence.csv under cfg.out_dir.
struct ConvergenceResult {
    std::vector<double> dts;
    std::vector<double> errors;
    std::vector<double> orders; // log2(err[i]/err[i+1])
};
ConvergenceResult convergence_study(const RunConfig& cfg, bool quiet = false);

/// Spectral-vs-FD cross validation from the config's preset data on the
/// config's grid. Writes cross_validate.json under cfg.out_dir.
CrossValidationReport run_cross_validate(const RunConfig& cfg, bool quiet = false);

} // namespace hydrostat
