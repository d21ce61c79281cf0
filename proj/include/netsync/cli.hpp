#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "netsync/certificate.hpp"
#include "netsync/simulator.hpp"

namespace netsync::cli {

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string summary;  // simulate: summary JSON path

    SweepConfig sweep;
    std::optional<double> omega;  // reduce: evaluate at s = j omega

    IntegrateConfig integrate;
    double ic_base = 0.1;
    double ic_spread = 0.01;

    double r_min = 1e-3, r_max = 10.0;
    double l_min = 1e-3, l_max = 10.0;
    std::size_t grid = 20;
    std::optional<double> bode_r;
    std::optional<double> bode_l;

    // star-with-load shortcut
    std::optional<std::size_t> n;
    double r_net = 0.01;
    double l_net = 0.01;
    double r_load = 1.0;
    double l_load = 0.0;
};

int cmd_reduce(const RunConfig& cfg, std::ostream& out);
int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_certify(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_surface(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command. Errors are reported on err and give exit code 2.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main_entry(int argc, char** argv);

}  // namespace netsync::cli
