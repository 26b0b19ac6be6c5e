#pragma once

// Flat "section.key = value" run configuration: file parsing, a strict key
// registry, profile defaults and override layering for the CLI. All values
// are SI base units (volts, ohms, farads, seconds, watts, hertz, bytes).

#include "loracap/device.hpp"
#include "loracap/simkit.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loracap {

// Every field optional; unset means "inherit from the profile".
struct RunConfig {
    std::optional<std::string> profile;
    std::optional<int> sf, cr_index, n_preamble, ih, de, payload_bytes;
    std::optional<double> bw_hz;
    std::optional<double> e_volts, p_watts;
    std::optional<double> load_off, load_sleep, load_idle, load_tx, load_listen, load_rx;
    std::optional<double> c_farads, v_min_volts, v_sl_volts, v_sl_fraction;
    std::optional<double> rx1_delay_s, rx2_delay_s;
    std::optional<double> interval_s;
    std::optional<long> n_packets;
};

// Sets one registered key ("phy.sf", "device.c_farads", ...). Throws
// std::runtime_error naming the key when it is unknown or the value does
// not parse.
void apply_key_value(RunConfig& rc, std::string_view key, std::string_view value);

// Parses a file of `section.key = value` lines ('#' starts a comment).
RunConfig load_config_file(const std::filesystem::path& path);

// Fields set in `over` win over `base`.
RunConfig merge(RunConfig base, const RunConfig& over);

const std::vector<std::string>& known_profiles();

struct Materialized {
    DeviceConfig device;
    TrafficConfig traffic;
    std::vector<std::string> warnings;
};

// Profile defaults overlaid with the run configuration, then validated.
// Throws std::runtime_error on config errors (unknown profile, conflicting
// keys) and std::invalid_argument on out-of-range values.
Materialized materialize(const RunConfig& rc, std::string_view profile = "sx1272-paper");

}  // namespace loracap
