#pragma once

// Locale-independent CSV helpers: '.' decimal separator, shortest
// round-trip float formatting, RFC-4180 style quoting, '\n' line ends.

#include <string>
#include <string_view>
#include <vector>

namespace loracap::csv {

std::string num(double v);
std::string num(long v);
std::string num(int v);

// Quotes the field when it contains a separator, quote or newline.
std::string field(std::string_view s);

// Joins pre-formatted cells with commas and appends '\n'.
std::string line(const std::vector<std::string>& cells);

}  // namespace loracap::csv
