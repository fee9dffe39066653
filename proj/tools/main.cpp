#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

#ifndef NANOGRID_VERSION
#define NANOGRID_VERSION "dev"
#endif

int main(int argc, char** argv) {
    CLI::App app{"Islanded nanogrid simulator with fuzzy bus-frequency energy management"};
    app.set_version_flag("--version", std::string("nanogrid ") + NANOGRID_VERSION);
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    std::string controller;

    auto* run = app.add_subcommand("run", "Run one scenario and write its trace and summary");
    run->add_option("scenario", scenario, "Scenario config file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--controller", controller, "Override the scenario's controller")
        ->check(CLI::IsMember({"flc", "proportional"}));

    auto* compare = app.add_subcommand("compare", "Run a scenario under both controllers");
    compare->add_option("scenario", scenario, "Scenario config file")->required();
    compare->add_option("--out", out_dir, "Output directory")->required();

    std::string fis_out;
    auto* dump = app.add_subcommand("dump-fis", "Write the fuzzy system definitions");
    dump->add_option("--out", fis_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 exits 0 for --help/--version and nonzero otherwise.
        return app.exit(e) == 0 ? 0 : 1;
    }

    using namespace nanogrid;
    if (*run) {
        std::optional<ControllerKind> kind;
        if (!controller.empty()) kind = parse_controller_kind(controller);
        return cli::cmd_run(scenario, out_dir, kind, std::cout, std::cerr);
    }
    if (*compare) return cli::cmd_compare(scenario, out_dir, std::cout, std::cerr);
    return cli::cmd_dump_fis(fis_out, std::cerr);
}
