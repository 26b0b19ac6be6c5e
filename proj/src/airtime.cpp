#include "loracap/airtime.hpp"

#include <algorithm>
#include <stdexcept>

namespace loracap {

namespace {

// Mathematical ceiling of a/b for b > 0. Rounds toward +inf, so a negative
// quotient lands on zero-or-above before the caller's clamp; C++ integer
// division already truncates toward zero, which is the ceiling for
// negative quotients.
long ceil_div(long a, long b) {
    return a / b + (a % b > 0 ? 1 : 0);
}

void check_phy(const PhyConfig& phy) {
    if (phy.sf < 7 || phy.sf > 12)
        throw std::invalid_argument("phy.sf must be in 7..12 (got " + std::to_string(phy.sf) + ")");
    if (!(phy.bw_hz > 0.0))
        throw std::invalid_argument("phy.bw_hz must be positive");
    if (phy.cr_index < 1 || phy.cr_index > 4)
        throw std::invalid_argument("phy.cr_index must be in 1..4 (got " +
                                    std::to_string(phy.cr_index) + ")");
    if (phy.n_preamble < 0)
        throw std::invalid_argument("phy.n_preamble must be >= 0");
    if (phy.ih != 0 && phy.ih != 1)
        throw std::invalid_argument("phy.ih must be 0 or 1");
    if (phy.de != 0 && phy.de != 1)
        throw std::invalid_argument("phy.de must be 0 or 1");
    if (phy.payload_bytes < 1)
        throw std::invalid_argument("phy.payload_bytes must be >= 1");
}

}  // namespace

std::vector<std::string> validate(const PhyConfig& phy) {
    check_phy(phy);
    std::vector<std::string> warnings;
    if (phy.payload_bytes < 13 || phy.payload_bytes > 51) {
        warnings.push_back("payload_bytes=" + std::to_string(phy.payload_bytes) +
                           " is outside the usual LoRaWAN range [13, 51]");
    }
    return warnings;
}

double symbol_duration(int sf, double bw_hz) {
    if (sf < 7 || sf > 12)
        throw std::invalid_argument("phy.sf must be in 7..12 (got " + std::to_string(sf) + ")");
    if (!(bw_hz > 0.0))
        throw std::invalid_argument("phy.bw_hz must be positive");
    return static_cast<double>(1L << sf) / bw_hz;
}

double preamble_duration(const PhyConfig& phy) {
    check_phy(phy);
    return (static_cast<double>(phy.n_preamble) + 4.25) * symbol_duration(phy.sf, phy.bw_hz);
}

int payload_symbol_count(const PhyConfig& phy) {
    check_phy(phy);
    const long numer = 8L * phy.payload_bytes - 4L * phy.sf + 28 + 16 - 20L * phy.ih;
    const long denom = 4L * (phy.sf - 2L * phy.de);
    const long coded = ceil_div(numer, denom) * (phy.cr_index + 4);
    return static_cast<int>(8 + std::max(coded, 0L));
}

double time_on_air(const PhyConfig& phy) {
    return preamble_duration(phy) +
           payload_symbol_count(phy) * symbol_duration(phy.sf, phy.bw_hz);
}

}  // namespace loracap
