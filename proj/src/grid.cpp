#include "loracap/grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace loracap {

namespace {

double parse_number(std::string_view item) {
    double out = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::invalid_argument("grid: cannot parse '" + std::string(item) + "' as a number");
    return out;
}

void expand_item(std::string_view item, std::vector<double>& out) {
    const std::size_t c1 = item.find(':');
    if (c1 == std::string_view::npos) {
        out.push_back(parse_number(item));
        return;
    }
    const std::size_t c2 = item.find(':', c1 + 1);
    if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos)
        throw std::invalid_argument("grid: range must be start:stop:step (got '" +
                                    std::string(item) + "')");
    const double start = parse_number(item.substr(0, c1));
    const double stop = parse_number(item.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(item.substr(c2 + 1));
    if (!(step > 0.0))
        throw std::invalid_argument("grid: step must be positive in '" + std::string(item) + "'");
    if (stop < start)
        throw std::invalid_argument("grid: stop is below start in '" + std::string(item) + "'");
    // Inclusive endpoints; the slack absorbs binary rounding of the span.
    const long n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9));
    for (long i = 0; i <= n; ++i)
        out.push_back(start + static_cast<double>(i) * step);
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("grid: empty specification");
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item =
            (comma == std::string_view::npos) ? text.substr(pos) : text.substr(pos, comma - pos);
        if (item.empty())
            throw std::invalid_argument("grid: empty item in '" + std::string(text) + "'");
        expand_item(item, out);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::vector<int> parse_int_grid(std::string_view text) {
    const auto values = parse_grid(text);
    std::vector<int> out;
    out.reserve(values.size());
    for (double v : values) {
        const double rounded = std::round(v);
        if (std::abs(v - rounded) > 1e-9)
            throw std::invalid_argument("grid: expected integer values in '" + std::string(text) +
                                        "'");
        out.push_back(static_cast<int>(rounded));
    }
    return out;
}

}  // namespace loracap
