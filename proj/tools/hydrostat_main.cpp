#include <iostream>

#include <CLI11.hpp>

#include "hydrostat/runner.hpp"
#include "hydrostat/snapshot.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string resume;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_resume) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
    if (with_resume)
        cmd->add_option("--resume", args.resume, "snapshot to restart from");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

hydrostat::RunConfig load(const CommonArgs& args) {
    hydrostat::RunConfig cfg = hydrostat::parse_config_file(args.config_path);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydrostat: pseudo-spectral primitive-equation simulator"};
    app.require_subcommand(1);

    CommonArgs run_args, sweep_args, dep_args, xval_args, conv_args;
    CLI::App* cmd_run = app.add_subcommand("run", "execute a single simulation");
    add_common(cmd_run, run_args, true);
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep-epsilon", "run the epsilon-regularization sweep");
    add_common(cmd_sweep, sweep_args, false);
    CLI::App* cmd_dep =
        app.add_subcommand("dependence", "continuous-dependence (Gronwall) study");
    add_common(cmd_dep, dep_args, false);
    CLI::App* cmd_xval =
        app.add_subcommand("cross-validate", "compare against the finite-difference oracle");
    add_common(cmd_xval, xval_args, false);
    CLI::App* cmd_conv = app.add_subcommand("convergence", "temporal self-convergence study");
    add_common(cmd_conv, conv_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            hydrostat::RunConfig cfg = load(run_args);
            hydrostat::RunResult r =
                hydrostat::run(cfg, run_args.resume, run_args.quiet, false);
            return r.blew_up ? kExitBlowup : 0;
        }
        if (cmd_sweep->parsed()) {
            hydrostat::RunConfig cfg = load(sweep_args);
            hydrostat::SweepResult r = hydrostat::epsilon_sweep(cfg, sweep_args.quiet);
            for (const auto& e : r.entries)
                if (e.failed) return kExitBlowup;
            return 0;
        }
        if (cmd_dep->parsed()) {
            hydrostat::RunConfig cfg = load(dep_args);
            hydrostat::dependence_study(cfg, dep_args.quiet);
            return 0;
        }
        if (cmd_xval->parsed()) {
            hydrostat::RunConfig cfg = load(xval_args);
            hydrostat::run_cross_validate(cfg, xval_args.quiet);
            return 0;
        }
        if (cmd_conv->parsed()) {
            hydrostat::RunConfig cfg = load(conv_args);
            hydrostat::convergence_study(cfg, conv_args.quiet);
            return 0;
        }
    } catch (const hydrostat::ConfigError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitConfig;
    } catch (const hydrostat::SnapshotError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitIo;
    } catch (const hydrostat::BlowupError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitBlowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
