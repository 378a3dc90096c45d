// dfpep: bound-state spectra, wavefunctions and vibrational thermodynamics
// of the deformed five-parameter exponential-type potential.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dfpep/commands.hpp"

namespace {

struct Args {
    std::string config_path;
    std::string out_dir;
    std::string branch_eta = "plus";
    std::string q1_mode = "printed";
    std::string bounds = "printed";
};

dfpep::cli::GlobalFlags make_flags(const Args& args) {
    dfpep::cli::GlobalFlags flags;
    flags.eta_branch =
        args.branch_eta == "minus" ? dfpep::EtaBranch::minus : dfpep::EtaBranch::plus;
    flags.q1_mode =
        args.q1_mode == "hbar2" ? dfpep::Q1Mode::hbar2 : dfpep::Q1Mode::printed;
    flags.bounds = args.bounds == "shifted" ? dfpep::thermo::Bounds::shifted
                                            : dfpep::thermo::Bounds::printed;
    return flags;
}

void add_common(CLI::App* cmd, Args& args, bool config_required) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required(config_required);
    cmd->add_option("--out", args.out_dir, "output directory (overrides config output.dir)");
    cmd->add_option("--branch-eta", args.branch_eta, "level-cap branch")
        ->check(CLI::IsMember({"plus", "minus"}));
    cmd->add_option("--q1-mode", args.q1_mode, "Q1 centrifugal-term convention")
        ->check(CLI::IsMember({"printed", "hbar2"}));
    cmd->add_option("--bounds", args.bounds, "classical-limit integration bounds")
        ->check(CLI::IsMember({"printed", "shifted"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for the deformed five-parameter exponential-type potential: "
                 "relativistic/nonrelativistic bound states, wavefunctions, vibrational "
                 "thermodynamics, reference-table validation and a finite-difference "
                 "cross-check. Environment: DFPEP_THREADS caps parallelism."};
    app.footer(
        "Config defaults (JSON; numbers accept exact rationals like \"1/12\"):\n"
        "  potential: p1 = p2 = p3 = 0, q = 1, alpha = 1, form = rational\n"
        "  scheme:    c0 = 1/12, omega = 0, lambda = 0 (or greene_aldrich: true)\n"
        "  constants: mu = m = hbar = kB = 1\n"
        "  states:    n = 0, l = 0, D = 3 (int or [lo, hi] spans, or [[n,l,D], ...])\n"
        "  solver:    window = [-10 mu - 50, 10 mu + 50], grid = 200001\n"
        "  wavefunction: context = relativistic, branch = positive, samples = 2000\n"
        "  thermo:    beta grid 0.01..10 at 200 points/decade, eta_small = [2,4,6],\n"
        "             eta_large = [20,30,40,50], beta_low = 0.005, beta_high = 50\n"
        "  oracle:    n_points = 20000, levels = 4, r_max auto-extended\n"
        "  output:    dir = out (overridden by --out)\n"
        "Unknown config keys are rejected. Exit codes: 0 ok, 2 config error,\n"
        "3 domain failure (partial results still written).");
    app.require_subcommand(1);

    Args args;
    CLI::App* spectrum = app.add_subcommand("spectrum", "solve the relativistic spectrum grid");
    add_common(spectrum, args, true);
    CLI::App* wavefunction =
        app.add_subcommand("wavefunction", "emit F(r), R(r) for one state");
    add_common(wavefunction, args, true);
    CLI::App* thermo =
        app.add_subcommand("thermo", "emit partition function and U/F/C figure data");
    add_common(thermo, args, true);
    CLI::App* validate = app.add_subcommand(
        "validate-table1", "compare the solver against the embedded reference table");
    add_common(validate, args, false);
    CLI::App* oracle = app.add_subcommand(
        "oracle-compare", "closed form vs finite-difference eigenvalues");
    add_common(oracle, args, true);

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<dfpep::cli::RunConfig> cfg;
        if (!args.config_path.empty()) {
            cfg = dfpep::cli::load_config(args.config_path);
        }
        std::string out_dir = args.out_dir;
        if (out_dir.empty()) {
            out_dir = cfg.has_value() ? cfg->out_dir : "out";
        }
        const dfpep::cli::GlobalFlags flags = make_flags(args);

        if (spectrum->parsed()) {
            return dfpep::cli::cmd_spectrum(*cfg, out_dir, flags);
        }
        if (wavefunction->parsed()) {
            return dfpep::cli::cmd_wavefunction(*cfg, out_dir, flags);
        }
        if (thermo->parsed()) {
            return dfpep::cli::cmd_thermo(*cfg, out_dir, flags);
        }
        if (validate->parsed()) {
            return dfpep::cli::cmd_validate_table1(cfg, out_dir, flags);
        }
        if (oracle->parsed()) {
            return dfpep::cli::cmd_oracle_compare(*cfg, out_dir, flags);
        }
    } catch (const dfpep::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
