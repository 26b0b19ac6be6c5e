#pragma once

// LoRa PHY timing math for SX127x-class radios: symbol, preamble, payload
// and whole-packet durations, following the LoRaWAN 1.0 uplink framing and
// the SX1272 datasheet airtime formulas.

#include <string>
#include <vector>

namespace loracap {

// Radio and frame parameters that determine time on air.
struct PhyConfig {
    int sf = 7;               // spreading factor, 7..12
    double bw_hz = 125000.0;  // bandwidth [Hz]
    int cr_index = 1;         // coding rate index, 1..4 (1 <=> rate 4/5)
    int n_preamble = 8;       // programmed preamble symbols
    int ih = 1;               // 1 = implicit header (header field omitted)
    int de = 0;               // 1 = low data rate optimization
    int payload_bytes = 16;   // PL
};

// Throws std::invalid_argument when a field is out of range. Returns
// non-fatal warnings (payload outside the usual LoRaWAN 13..51 span).
std::vector<std::string> validate(const PhyConfig& phy);

// 2^SF / BW, in seconds.
double symbol_duration(int sf, double bw_hz);

// (n_preamble + 4.25) * T_sym, in seconds.
double preamble_duration(const PhyConfig& phy);

// Symbols carrying payload (and header/CRC overhead); never below 8.
int payload_symbol_count(const PhyConfig& phy);

// Preamble plus payload duration, in seconds.
double time_on_air(const PhyConfig& phy);

}  // namespace loracap
