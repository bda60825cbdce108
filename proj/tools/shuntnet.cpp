// Command line front end for the shunt network toolkit.
//
//   shuntnet run <scenario.toml> [--seed N] [--out DIR] [--quiet]
//   shuntnet list-modes <scenario.toml>
//   shuntnet check <network-bundle> <model-bundle>

#include "shuntnet/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    CLI::App app{"passive shunt network synthesis and assessment"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string network_dir;
    std::string model_dir;
    std::uint64_t seed = 0;
    std::string out_dir;

    shuntnet::RunOverrides overrides;

    CLI::App* run = app.add_subcommand("run", "run a scenario end to end");
    run->add_option("scenario", scenario_file, "scenario file")->required();
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "override the scenario random seed");
    CLI::Option* out_opt =
        run->add_option("--out", out_dir, "override the scenario output directory");
    run->add_flag("--quiet", overrides.quiet, "suppress progress output");

    CLI::App* list = app.add_subcommand(
        "list-modes", "list short circuit modes of the scenario model with "
                      "their coupling figures");
    list->add_option("scenario", scenario_file, "scenario file")->required();

    CLI::App* check = app.add_subcommand(
        "check", "verify an exported network against a model bundle");
    check->add_option("network", network_dir, "network bundle directory")->required();
    check->add_option("model", model_dir, "model bundle directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) {
        overrides.seed = seed;
    }
    if (*out_opt) {
        overrides.out_dir = out_dir;
    }

    if (run->parsed()) {
        return shuntnet::command_run(scenario_file, overrides, std::cout, std::cerr);
    }
    if (list->parsed()) {
        return shuntnet::command_list_modes(scenario_file, overrides,
                                            std::cout, std::cerr);
    }
    return shuntnet::command_check(network_dir, model_dir, std::cout, std::cerr);
}
