#pragma once

#include "cnoidal/potential.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Command-line entry points: configuration parsing, deterministic CSV/JSON
// output.  Identical configs produce byte-identical outputs; every file
// embeds the artifact version and the config hash.

namespace cnoidal {

struct ConfigError : std::runtime_error {
    ConfigError(std::string msg, int line_ = 0, int column_ = 0)
        : std::runtime_error(std::move(msg)), line(line_), column(column_) {}
    int line;
    int column;
};

struct RunConfig {
    std::string command; // wave | sweep | spectrum | bands | simulate | limits
    std::string pot_kind = "fpu_alpha";
    double pot_p1 = 1.0; // a | A | alpha
    double pot_p2 = 1.0; // b | B | beta
    double k2 = 0.6;
    double L = 0.0; // 0: half period from the speed-one normalization
    std::vector<double> eps_list = {0.1};
    int grid = 0; // 0: default by modulus
    double tol = 1e-12;
    double eps0 = 0.5;
    std::string output_dir = "out";
    // bands
    int n_lame = 3;
    std::vector<double> k2_list; // empty: 50 points on [0.02, 0.98]
    int hill_grid = 128;
    // spectrum
    int eig_count = 8;
    // simulate
    int q_periods = 3;
    double T_periods = 50.0;
    double dt = 1e-3;
    int samples = 200;
    int snapshots = 10;
    std::string seed_mode = "solved"; // solved | cnoidal

    Potential potential() const;
    std::string canonical_text() const; // defaults materialized, keys sorted
    std::string hash() const;           // FNV-1a 64 of the canonical text
};

// `command` comes from the CLI; a "command" key in the file must agree.
RunConfig parse_config_text(const std::string& text, const std::string& command);
RunConfig parse_config_file(const std::string& path, const std::string& command);

uint64_t fnv1a64(const std::string& text);
std::string format_double(double v); // shortest round-trip decimal

int cmd_wave(const RunConfig& cfg, const std::string& out_dir);
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir);
int cmd_spectrum(const RunConfig& cfg, const std::string& out_dir);
int cmd_bands(const RunConfig& cfg, const std::string& out_dir);
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_limits(const RunConfig& cfg, const std::string& out_dir);

// dispatch by cfg.command; returns the process exit code (0 ok, 2 out of regime)
int run_command(const RunConfig& cfg, const std::string& out_dir);

} // namespace cnoidal
