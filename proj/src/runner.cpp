#include "hydrostat/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <thread>

#include <json.hpp>

#include "hydrostat/mms.hpp"
#include "hydrostat/snapshot.hpp"
#include "hydrostat/transform.hpp"

namespace hydrostat {

namespace {

namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kCsvHeader =
    "time,v_L2,v_H1,v_H2,T_L2,T_H1,T_H2,diss_v_H,diss_v_z,diss_T_z,diss_T_H,"
    "coupling,source_T,residual_v,residual_T,eta_L2,eta_H1,eta_H2,theta_L2,theta_H1,"
    "theta_H2,C_R,X,Y,Z,t2_eta_theta_H2,t_u_H2,aniso_ratio1,aniso_ratio2";

void write_csv_row(std::ostream& out, const EnergyReport& e, const RegularityReport& r) {
    out << fmt(e.time) << ',' << fmt(e.v_L2) << ',' << fmt(e.v_H1) << ',' << fmt(e.v_H2) << ','
        << fmt(e.T_L2) << ',' << fmt(e.T_H1) << ',' << fmt(e.T_H2) << ',' << fmt(e.diss_v_H)
        << ',' << fmt(e.diss_v_z) << ',' << fmt(e.diss_T_z) << ',' << fmt(e.diss_T_H) << ','
        << fmt(e.coupling) << ',' << fmt(e.source_T) << ',' << fmt(e.residual_v) << ','
        << fmt(e.residual_T) << ',' << fmt(r.eta_L2) << ',' << fmt(r.eta_H1) << ','
        << fmt(r.eta_H2) << ',' << fmt(r.theta_L2) << ',' << fmt(r.theta_H1) << ','
        << fmt(r.theta_H2) << ',' << fmt(r.C_R) << ',' << fmt(r.X) << ',' << fmt(r.Y) << ','
        << fmt(r.Z) << ',' << fmt(r.t2_eta_theta_H2) << ',' << fmt(r.t_u_H2) << ','
        << fmt(r.aniso_ratio1) << ',' << fmt(r.aniso_ratio2) << '\n';
}

struct PresetFields {
    PhysicalField3D v1, v2, T;
};

PresetFields preset_fields(const RunConfig& cfg) {
    const Grid3 g = cfg.grid();
    const double amp = cfg.ic_amplitude;
    PresetFields f{PhysicalField3D(g), PhysicalField3D(g), PhysicalField3D(g)};
    if (cfg.preset == "zero" || cfg.preset == "conduction") {
        // conduction: the pure conduction profile is T_raw = -z/h, i.e. the
        // zero state of the shifted variables.
        return f;
    }
    if (cfg.preset == "shear") {
        f.v1 = PhysicalField3D::sample(
            g, [amp](double, double y, double) { return amp * std::sin(2.0 * pi * y); });
        return f;
    }
    if (cfg.preset == "manufactured") {
        ManufacturedSolution m;
        m.params = cfg.params;
        m.a *= amp;
        m.b *= amp;
        f.v1 = PhysicalField3D::sample(
            g, [&](double x, double y, double z) { return m.v1(x, y, z); });
        f.v2 = PhysicalField3D::sample(
            g, [&](double x, double y, double z) { return m.v2(x, y, z); });
        f.T = PhysicalField3D::sample(
            g, [&](double x, double y, double z) { return m.T(x, y, z); });
        return f;
    }
    throw ConfigError("preset '" + cfg.preset + "' has no analytic fields");
}

double total_l2(const State& s) {
    return std::sqrt(l2_norm(s.v1) * l2_norm(s.v1) + l2_norm(s.v2) * l2_norm(s.v2) +
                     l2_norm(s.T) * l2_norm(s.T));
}

double state_difference(const State& a, const State& b) {
    return std::sqrt(std::pow(l2_norm(a.v1 - b.v1), 2) + std::pow(l2_norm(a.v2 - b.v2), 2) +
                     std::pow(l2_norm(a.T - b.T), 2));
}

// Fixed-dt trajectory sampled every `sample_every` steps (initial state
// included). Used where two runs must share sample times exactly.
std::vector<State> trajectory(State s, const RunConfig& cfg, const SourceSpec* src) {
    if (cfg.stepper.dt <= 0.0)
        throw ConfigError("this study requires a fixed dt (adaptive stepping would "
                          "desynchronize the sample times)");
    std::vector<State> out;
    out.push_back(s);
    long steps = 0;
    const double t_end = cfg.stepper.t_end;
    while (s.time < t_end - 1e-12 * std::max(1.0, t_end)) {
        const double dt = std::min(cfg.stepper.dt, t_end - s.time);
        s = step(s, dt, cfg.stepper.scheme, src);
        if (++steps % cfg.sample_every == 0) out.push_back(s);
    }
    if (std::abs(out.back().time - s.time) > 0.0) out.push_back(s);
    return out;
}

} // namespace

int worker_threads() {
    if (const char* env = std::getenv("HYDROSTAT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

State make_initial_state(const RunConfig& cfg) {
    if (cfg.preset == "file") return read_snapshot(cfg.ic_file);
    PresetFields f = preset_fields(cfg);
    return make_state(f.v1, f.v2, f.T, cfg.params);
}

SourceSpec make_source(const RunConfig& cfg) {
    if (cfg.preset == "manufactured") {
        ManufacturedSolution m;
        m.params = cfg.params;
        m.a *= cfg.ic_amplitude;
        m.b *= cfg.ic_amplitude;
        return m.source();
    }
    return {};
}

State perturb_state(const State& base, double magnitude, unsigned long seed) {
    if (magnitude == 0.0) return base;
    const Grid3& g = base.grid();
    const double h = base.params.h;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double c[6] = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};

    PhysicalField3D p1 = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return c[0] * std::sin(2 * pi * x) * std::cos(pi * z / h) +
               c[1] * std::cos(2 * pi * y) * std::cos(2 * pi * z / h);
    });
    PhysicalField3D p2 = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return c[2] * std::cos(2 * pi * x) * std::cos(pi * z / h) +
               c[3] * std::sin(2 * pi * y) * std::cos(2 * pi * z / h);
    });
    PhysicalField3D pT = PhysicalField3D::sample(g, [&](double x, double y, double z) {
        return c[4] * std::cos(2 * pi * x) * std::sin(pi * z / h) +
               c[5] * std::sin(2 * pi * y) * std::sin(2 * pi * z / h);
    });

    SpectralField3D d1 = forward(p1, Parity::Even);
    SpectralField3D d2 = forward(p2, Parity::Even);
    SpectralField3D dT = forward(pT, Parity::Odd);
    project_onto_constraints(d1, d2, dT);
    dealias_in_place(d1);
    dealias_in_place(d2);
    dealias_in_place(dT);
    const double n = std::sqrt(std::pow(l2_norm(d1), 2) + std::pow(l2_norm(d2), 2) +
                               std::pow(l2_norm(dT), 2));
    if (n == 0.0) return base;
    const double scale = magnitude / n;
    d1 *= scale;
    d2 *= scale;
    dT *= scale;
    State out = base;
    out.v1 += d1;
    out.v2 += d2;
    out.T += dT;
    return out;
}

RunResult run(const RunConfig& cfg, const std::string& resume_path, bool quiet,
              bool keep_states) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    State s = resume_path.empty() ? make_initial_state(cfg) : read_snapshot(resume_path);
    SourceSpec src = make_source(cfg);
    const SourceSpec* srcp = src.empty() ? nullptr : &src;

    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "diagnostics.csv");
    if (!csv) throw std::ios_base::failure("cannot open diagnostics.csv in " + cfg.out_dir);
    csv << kCsvHeader << '\n';

    RunResult res;
    auto sample = [&](const State& st) {
        EnergyReport e = norms(st);
        RegularityReport r = regularity_functionals(st, st.time);
        write_csv_row(csv, e, r);
        csv.flush();
        res.energy.push_back(e);
        res.regularity.push_back(r);
        if (keep_states) res.states.push_back(st);
    };
    sample(s);

    if (!quiet)
        std::cout << "run: preset=" << cfg.preset << " grid=" << cfg.nx << "x" << cfg.ny << "x"
                  << cfg.nz << " t_end=" << cfg.stepper.t_end << std::endl;

    const double t_end = cfg.stepper.t_end;
    while (s.time < t_end - 1e-12 * std::max(1.0, t_end)) {
        double dt = (cfg.stepper.dt > 0.0)
                        ? cfg.stepper.dt
                        : cfl_dt(s, cfg.stepper.cfl_safety, cfg.stepper.dt_max);
        dt = std::min(dt, t_end - s.time);
        try {
            s = step(s, dt, cfg.stepper.scheme, srcp);
        } catch (const BlowupError& e) {
            s = e.last_valid;
            res.blew_up = true;
            if (!quiet) std::cout << "run: " << e.what() << std::endl;
            break;
        }
        ++res.steps;
        if (res.steps % cfg.sample_every == 0) sample(s);
        if (cfg.snapshot_every > 0 && res.steps % cfg.snapshot_every == 0)
            write_snapshot(fs::path(cfg.out_dir) /
                               ("snapshot_" + std::to_string(res.steps) + ".hysnap"),
                           s);
    }
    if (res.energy.empty() || res.energy.back().time != s.time) sample(s);
    res.final_state = s;
    write_snapshot(fs::path(cfg.out_dir) / "final.hysnap", s);

    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json summary;
    summary["final_time"] = s.time;
    summary["steps"] = res.steps;
    summary["blowup"] = res.blew_up;
    summary["v_L2"] = res.energy.back().v_L2;
    summary["T_L2"] = res.energy.back().T_L2;
    summary["v_H2"] = res.energy.back().v_H2;
    summary["T_H2"] = res.energy.back().T_H2;
    summary["wall_time_s"] = res.wall_time_s;
    std::ofstream js(fs::path(cfg.out_dir) / "summary.json");
    js << summary.dump(2) << '\n';

    if (!quiet)
        std::cout << "run: finished at t=" << s.time << " steps=" << res.steps
                  << (res.blew_up ? " (blow-up)" : "") << std::endl;
    return res;
}

SweepResult epsilon_sweep(const RunConfig& cfg, bool quiet) {
    cfg.validate();
    if (cfg.epsilons.empty() ||
        std::none_of(cfg.epsilons.begin(), cfg.epsilons.end(),
                     [](double e) { return e == 0.0; }))
        throw ConfigError("epsilon sweep: the epsilons list must include 0");

    SweepResult res;
    res.entries.resize(cfg.epsilons.size());
    std::vector<State> finals(cfg.epsilons.size());

    auto member = [&](std::size_t i) {
        SweepEntry& e = res.entries[i];
        e.epsilon = cfg.epsilons[i];
        try {
            RunConfig c = cfg;
            c.params.epsilon = cfg.epsilons[i];
            c.out_dir = (fs::path(cfg.out_dir) / ("eps_" + std::to_string(i))).string();
            RunResult r = run(c, "", true, false);
            if (r.blew_up) {
                e.failed = true;
                e.error = "blow-up";
                return;
            }
            finals[i] = r.final_state;
            for (const EnergyReport& er : r.energy)
                e.sup_H2 = std::max(e.sup_H2,
                                    std::sqrt(er.v_H2 * er.v_H2 + er.T_H2 * er.T_H2));
        } catch (const std::exception& ex) {
            e.failed = true;
            e.error = ex.what();
        }
    };

    const int nthreads = worker_threads();
    for (std::size_t base = 0; base < cfg.epsilons.size();
         base += static_cast<std::size_t>(nthreads)) {
        std::vector<std::thread> pool;
        for (std::size_t i = base;
             i < std::min(cfg.epsilons.size(), base + static_cast<std::size_t>(nthreads)); ++i)
            pool.emplace_back(member, i);
        for (auto& t : pool) t.join();
    }

    std::size_t zero_idx = 0;
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i)
        if (cfg.epsilons[i] == 0.0) zero_idx = i;
    if (!res.entries[zero_idx].failed)
        for (std::size_t i = 0; i < res.entries.size(); ++i)
            if (!res.entries[i].failed)
                res.entries[i].diff_from_limit = state_difference(finals[i], finals[zero_idx]);

    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "sweep.csv");
    csv << "epsilon,diff_from_limit,sup_H2,failed\n";
    for (const SweepEntry& e : res.entries)
        csv << fmt(e.epsilon) << ',' << fmt(e.diff_from_limit) << ',' << fmt(e.sup_H2) << ','
            << (e.failed ? 1 : 0) << '\n';
    if (!quiet) std::cout << "sweep: " << res.entries.size() << " members done" << std::endl;
    return res;
}

DependenceResult dependence_study(const RunConfig& cfg, bool quiet) {
    cfg.validate();
    if (cfg.perturb_magnitude <= 0.0)
        throw ConfigError("dependence study: perturb_magnitude must be positive");

    State base0 = make_initial_state(cfg);
    State pert0 = perturb_state(base0, cfg.perturb_magnitude, cfg.seed);
    SourceSpec src = make_source(cfg);
    const SourceSpec* srcp = src.empty() ? nullptr : &src;

    std::vector<State> trajA = trajectory(pert0, cfg, srcp);
    std::vector<State> trajB = trajectory(base0, cfg, srcp);

    DependenceResult res;
    res.gronwall = difference_gronwall(trajA, trajB, cfg.envelope_multiplier);
    res.within_envelope = res.gronwall.within_envelope;
    res.final_difference = std::sqrt(res.gronwall.d.back());

    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "dependence.csv");
    csv << "time,d,envelope\n";
    for (std::size_t i = 0; i < res.gronwall.time.size(); ++i)
        csv << fmt(res.gronwall.time[i]) << ',' << fmt(res.gronwall.d[i]) << ','
            << fmt(res.gronwall.envelope[i]) << '\n';
    if (!quiet)
        std::cout << "dependence: final difference " << res.final_difference
                  << (res.within_envelope ? " (within envelope)" : " (ENVELOPE EXCEEDED)")
                  << std::endl;
    return res;
}

ConvergenceResult convergence_study(const RunConfig& cfg, bool quiet) {
    cfg.validate();
    if (cfg.stepper.dt <= 0.0)
        throw ConfigError("convergence study requires a fixed base dt");
    State s0 = make_initial_state(cfg);
    SourceSpec src = make_source(cfg);
    const SourceSpec* srcp = src.empty() ? nullptr : &src;

    auto run_at = [&](double dt) {
        State s = s0;
        const double t_end = cfg.stepper.t_end;
        while (s.time < t_end - 1e-12 * std::max(1.0, t_end))
            s = step(s, std::min(dt, t_end - s.time), cfg.stepper.scheme, srcp);
        return s;
    };

    State ref = run_at(cfg.stepper.dt / 16.0);
    ConvergenceResult res;
    for (double dt : {cfg.stepper.dt, cfg.stepper.dt / 2.0, cfg.stepper.dt / 4.0}) {
        res.dts.push_back(dt);
        res.errors.push_back(state_difference(run_at(dt), ref));
    }
    for (std::size_t i = 0; i + 1 < res.errors.size(); ++i)
        res.orders.push_back(std::log2(res.errors[i] / res.errors[i + 1]));

    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "convergence.csv");
    csv << "dt,error,order\n";
    for (std::size_t i = 0; i < res.dts.size(); ++i)
        csv << fmt(res.dts[i]) << ',' << fmt(res.errors[i]) << ','
            << (i < res.orders.size() ? fmt(res.orders[i]) : "") << '\n';
    if (!quiet) {
        std::cout << "convergence:";
        for (std::size_t i = 0; i < res.orders.size(); ++i) std::cout << ' ' << res.orders[i];
        std::cout << std::endl;
    }
    return res;
}

CrossValidationReport run_cross_validate(const RunConfig& cfg, bool quiet) {
    cfg.validate();
    if (cfg.stepper.dt <= 0.0)
        throw ConfigError("cross-validate requires a fixed dt");
    PresetFields f = preset_fields(cfg);
    State sp = make_state(f.v1, f.v2, f.T, cfg.params);
    FdState fd = make_fd_state(f.v1, f.v2, f.T, cfg.params);

    // explicit-diffusion stability limit for the FD oracle's RK4
    const Grid3 g = cfg.grid();
    const Params& p = cfg.params;
    const double lam = 4.0 / (g.dx() * g.dx() * p.R1) + 4.0 / (g.dy() * g.dy() * p.R1) +
                       4.0 / (g.dz() * g.dz() * std::min(p.R2, p.R3)) + 4.0 * p.epsilon *
                       (1.0 / (g.dx() * g.dx()) + 1.0 / (g.dy() * g.dy()));
    const double dt_fd = std::min(cfg.stepper.dt, 1.0 / lam);

    CrossValidationReport r = cross_validate(fd, sp, cfg.stepper.t_end, dt_fd, cfg.stepper.dt);

    fs::create_directories(cfg.out_dir);
    nlohmann::json j;
    j["rel_v"] = r.rel_v;
    j["rel_T"] = r.rel_T;
    j["rel_w"] = r.rel_w;
    std::ofstream js(fs::path(cfg.out_dir) / "cross_validate.json");
    js << j.dump(2) << '\n';
    if (!quiet)
        std::cout << "cross-validate: rel_v=" << r.rel_v << " rel_T=" << r.rel_T
                  << " rel_w=" << r.rel_w << std::endl;
    return r;
}

} // namespace hydrostat
