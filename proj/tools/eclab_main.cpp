#include <CLI11.hpp>
#include <iostream>

#include "eclab/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Darcy electroconvection pseudospectral lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", eclab::artifact_version());

    eclab::CommandOptions opts;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* config = sub->add_option("--config", opts.config_path, "JSON run configuration")->envname("ECLAB_CONFIG");
        if (needs_config) config->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out_dir, "output directory")->envname("ECLAB_OUT");
        sub->add_option("--workers", opts.workers, "parallel runs for sweep")->envname("ECLAB_WORKERS")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "overrides ic.seed")->envname("ECLAB_SEED");
        sub->add_flag("--strict-dealias", opts.strict_dealias, "form products on a padded 2n grid")
            ->envname("ECLAB_STRICT_DEALIAS");
    };

    CLI::App* run = app.add_subcommand("run", "integrate one configuration and evaluate its diagnostics");
    CLI::App* picard = app.add_subcommand("picard", "Picard iteration of the mild formulation");
    CLI::App* sweep = app.add_subcommand("sweep", "grid of runs over the config's sweep lists");
    CLI::App* analyze = app.add_subcommand("analyze", "recompute diagnostics from stored run directories");
    CLI::App* selftest = app.add_subcommand("selftest", "built-in consistency checks");
    add_common(run, true);
    add_common(picard, true);
    add_common(sweep, true);
    analyze->add_option("paths", opts.paths, "run directories")->required()->check(CLI::ExistingDirectory);
    analyze->add_option("--out", opts.out_dir, "where to write recomputed reports")->envname("ECLAB_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        std::cerr << eclab::failure_json(eclab::kExitConfig, "usage", e.what()) << "\n";
        return eclab::kExitConfig;
    }
    for (CLI::App* sub : {run, picard, sweep}) {
        if (sub->parsed() && sub->count("--seed") > 0) opts.seed = seed;
    }

    if (run->parsed()) return eclab::cmd_run(opts, std::cout, std::cerr);
    if (picard->parsed()) return eclab::cmd_picard(opts, std::cout, std::cerr);
    if (sweep->parsed()) return eclab::cmd_sweep(opts, std::cout, std::cerr);
    if (analyze->parsed()) return eclab::cmd_analyze(opts, std::cout, std::cerr);
    if (selftest->parsed()) return eclab::cmd_selftest(std::cout);
    return eclab::kExitConfig;
}
