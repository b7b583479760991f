#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cli_config.hpp"

namespace netadopt::cli {

struct FigureOutput {
    std::string name;  // file stem, e.g. "fig3"
    std::string csv;
    std::vector<std::pair<std::string, std::string>> svgs;  // (file stem, content)
};

/// Builds the data behind one of the numbered experiment figures (2..8).
/// Sweep points are evaluated in parallel; output order is fixed.
FigureOutput make_figure(int id, const ExperimentConfig& cfg);

}  // namespace netadopt::cli
