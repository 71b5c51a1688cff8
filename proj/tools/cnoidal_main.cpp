#include "cnoidal/cli_io.hpp"
#include "cnoidal/version.hpp"
#include "cnoidal/wave_solver.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"cnoidal: periodic travelling waves of nonlinear chains"};
    app.set_version_flag("--version", std::string(cnoidal::kVersion));
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        std::string out;
    };
    std::map<std::string, SubArgs> args;
    for (const char* name : {"wave", "sweep", "spectrum", "bands", "simulate", "limits"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", args[name].config, "JSON configuration file")->required();
        sub->add_option("--out", args[name].out, "output directory (overrides the config)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        const auto cfg = cnoidal::parse_config_file(args[cmd].config, cmd);
        return cnoidal::run_command(cfg, args[cmd].out);
    } catch (const cnoidal::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cnoidal::OutOfRegime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
