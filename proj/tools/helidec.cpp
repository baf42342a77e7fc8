// Command-line front end: run, verify, spectra, probe.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helidec/checkpoint.hpp"
#include "helidec/config.hpp"
#include "helidec/csv.hpp"
#include "helidec/verify.hpp"

namespace {

using namespace helidec;
namespace fs = std::filesystem;

constexpr const char* kUsage =
    "usage: helidec <command> [args]\n"
    "  run <config>                 integrate; writes series.csv and final.chk to out_dir\n"
    "  verify <config>              run the invariant suite, one PASS/FAIL line per property\n"
    "  spectra <checkpoint> [-o F]  write shell spectra and fluxes (default spectra.csv)\n"
    "  probe <config> --eps a,b,c   continuity-in-initial-data probe\n";

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_run(const std::string& config_path) {
    const SimConfig config = load_config(config_path);
    fs::create_directories(config.out_dir);
    const fs::path out(config.out_dir);

    const SpectralState init = initial_state(config);
    const double dt_cfl = cfl_advisory_dt(config, init);
    std::cerr << "info: " << step_count(config) << " steps of dt = " << config.dt << " on a "
              << config.grid.transform_size() << "^3 transform grid; CFL advisory dt <= " << dt_cfl
              << (config.dt > dt_cfl ? " (exceeded)" : "") << '\n';

    try {
        const Trajectory traj = run_from(config, init);
        write_series_csv((out / "series.csv").string(), traj.records);
        write_checkpoint(traj.final_state, (out / "final.chk").string(), config.nu);
    } catch (const NonFiniteError& e) {
        write_checkpoint(e.last_finite(), (out / "last_finite.chk").string(), config.nu);
        throw;
    }
    return 0;
}

int cmd_verify(const std::string& config_path) {
    const SimConfig config = load_config(config_path);
    bool all = true;
    for (const PropertyResult& r : run_invariant_suite(config)) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " value=" << fmt17(r.value)
                  << " threshold=" << r.threshold << '\n';
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_spectra(const std::string& checkpoint_path, const std::string& out_path) {
    const SpectralState state = read_checkpoint(checkpoint_path);
    FastEvaluator evaluator(state.mode_set());
    const SpectralState nonlinear = evaluator.rhs(state);
    write_spectra_csv(out_path, spectra_and_fluxes(state, nonlinear));
    const FluxClosure closure = flux_closure(state, nonlinear);
    std::cout << "flux_closure_E=" << fmt17(closure.energy) << " flux_closure_H=" << fmt17(closure.helicity)
              << '\n';
    return 0;
}

int cmd_probe(const std::string& config_path, const std::vector<double>& eps) {
    const SimConfig config = load_config(config_path);
    std::cout << "epsilon,sup_ratio,sup_norm\n";
    for (const ProbeRow& row : lipschitz_probe(config, eps)) {
        std::cout << fmt17(row.epsilon) << ',' << fmt17(row.sup_ratio) << ',' << fmt17(row.sup_norm) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> commands = {"run", "verify", "spectra", "probe"};
    if (argc < 2 || std::find(commands.begin(), commands.end(), argv[1]) == commands.end()) {
        if (argc >= 2) std::cerr << "error: UnknownCommand: '" << argv[1] << "'\n";
        std::cerr << kUsage;
        return 2;
    }

    CLI::App app{"helically decimated Navier-Stokes solver", "helidec"};
    app.require_subcommand(1);

    std::string config_path, checkpoint_path, spectra_out = "spectra.csv";
    std::vector<double> eps;

    auto* run = app.add_subcommand("run", "integrate a configuration");
    run->add_option("config", config_path)->required();
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("config", config_path)->required();
    auto* spectra = app.add_subcommand("spectra", "shell spectra and fluxes of a checkpoint");
    spectra->add_option("checkpoint", checkpoint_path)->required();
    spectra->add_option("-o,--output", spectra_out, "output CSV path");
    auto* probe = app.add_subcommand("probe", "Lipschitz probe");
    probe->add_option("config", config_path)->required();
    probe->add_option("--eps", eps, "comma-separated perturbation sizes")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: Usage: " << e.what() << '\n' << kUsage;
        return 2;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*verify) return cmd_verify(config_path);
        if (*spectra) return cmd_spectra(checkpoint_path, spectra_out);
        if (*probe) return cmd_probe(config_path, eps);
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
