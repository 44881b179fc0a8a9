// Command-line experiment runner. Every subcommand except selftest takes a
// JSON config (--config) whose "command" field must match the subcommand;
// the remaining flags override config values.
#include <CLI11.hpp>

#include "fbfpen/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Penalty-scheme operator-splitting experiments"};
    app.require_subcommand(1);

    std::string config_path;
    fbfpen::CliOverrides ov;
    std::string outdir, algorithm;
    std::uint64_t seed = 0;
    std::size_t iters = 0;
    bool record_history = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", config_path, "JSON config file");
        if (needs_config) copt->required();
        sub->add_option("--outdir", outdir, "output directory");
        sub->add_option("--seed", seed, "random seed override");
        sub->add_option("--iters", iters, "iteration budget override");
        sub->add_option("--algorithm", algorithm, "fbf or fbf_ep")
            ->check(CLI::IsMember({"fbf", "fbf_ep"}));
        sub->add_flag("--record-history", record_history,
                      "retain full iterate history in memory");
    };

    CLI::App* inpaint = app.add_subcommand("inpaint", "TV image inpainting experiment");
    add_common(inpaint, true);
    CLI::App* inclusion =
        app.add_subcommand("run-inclusion", "generic penalty solve of an affine instance");
    add_common(inclusion, true);
    CLI::App* minimax = app.add_subcommand("minimax", "constrained quadratic saddle point");
    add_common(minimax, true);
    CLI::App* validate =
        app.add_subcommand("validate-schedule", "check step/penalty sequences");
    add_common(validate, true);
    app.add_subcommand("selftest", "run built-in cross-checks");

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "selftest") return fbfpen::run_selftest();

    if (sub->count("--outdir")) ov.outdir = outdir;
    if (sub->count("--seed")) ov.seed = seed;
    if (sub->count("--iters")) ov.iters = iters;
    if (sub->count("--algorithm")) ov.algorithm = algorithm;
    if (sub->count("--record-history")) ov.record_history = record_history;

    return fbfpen::run_experiment(config_path, ov);
}
