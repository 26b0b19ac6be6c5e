#pragma once

// Sweep-grid syntax shared by the CLI subcommands: comma-separated items,
// each either a scalar or an inclusive start:stop:step range.

#include <string_view>
#include <vector>

namespace loracap {

// "0.001,0.01,0.1" or "16:48:8" or a mix; throws std::invalid_argument on
// malformed or empty specs.
std::vector<double> parse_grid(std::string_view text);

// Same, but every value must be integral.
std::vector<int> parse_int_grid(std::string_view text);

}  // namespace loracap
