#pragma once

#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "dirichlet/state.hpp"

namespace ctl {

struct GlobalOptions {
    std::string out;
    std::string config;
    bool noHeader = false;
};

void addSeriesCommands(CLI::App& app, const GlobalOptions& global);
void addControlCommands(CLI::App& app, const GlobalOptions& global);

/// Either a number list "1, 0, 0.5" or a sum of modes such as
/// "phi1 - 1/2*phi3"; "0" is the zero state.
dirichlet::SpectralState parseState(std::string_view text);

}  // namespace ctl
