#include "loracap/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace loracap::csv {

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{})
        throw std::runtime_error("csv: cannot format number");
    return std::string(buf, res.ptr);
}

std::string num(long v) {
    return std::to_string(v);
}

std::string num(int v) {
    return std::to_string(v);
}

std::string field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(s);
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
    return out;
}

}  // namespace loracap::csv
