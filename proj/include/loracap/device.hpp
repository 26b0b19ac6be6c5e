#pragma once

// Battery-less LoRaWAN class A device: per-state load resistances, the
// TX / RX1 / RX2 cycle timing, and the single-cycle executor that walks the
// capacitor voltage through each phase.

#include "loracap/airtime.hpp"
#include "loracap/circuit.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace loracap {

enum class SystemState { Off, Sleep, Idle, Tx, Listen, Rx };
inline constexpr int kSystemStateCount = 6;

const char* to_string(SystemState state);

// Load resistance seen by the capacitor in each system state.
struct LoadTable {
    std::array<double, kSystemStateCount> r_ohms{};

    double at(SystemState s) const { return r_ohms[static_cast<int>(s)]; }
    double& at(SystemState s) { return r_ohms[static_cast<int>(s)]; }
};

// SX1272 + STM32L162 consumption at +13 dBm TX power.
LoadTable sx1272_loads();

struct DeviceConfig {
    double c_farads = 4700e-6;
    double v_min_volts = 1.8;  // turn-off threshold
    double v_sl_volts = 2.97;  // turn-on threshold
    Harvester harvester{};
    LoadTable loads = sx1272_loads();
    PhyConfig phy{};
    double rx1_delay_s = 1.0;
    double rx2_delay_s = 2.0;
};

// Reference configuration for the SX1272/73 setup backing the built-in
// "sx1272-paper" profile.
DeviceConfig sx1272_paper_device();

// Throws std::invalid_argument on broken invariants; returns the PHY
// warnings, if any.
std::vector<std::string> validate(const DeviceConfig& config);

// E / R_L(state). Throws std::runtime_error when the table entry is unusable.
double load_current(SystemState state, const LoadTable& loads, double e_volts);

struct Phase {
    SystemState state;
    double duration_s;
    const char* label;
};

// The empty-downlink uplink cycle: tx, idle1, rx1 (listen one preamble at
// the uplink SF), idle2, rx2 (listen one preamble at SF12). Both windows
// are anchored to the end of TX; throws when the RX1 listen does not fit
// before RX2 opens.
std::vector<Phase> cycle_phases(const DeviceConfig& config);

struct CycleOutcome {
    bool tx_ok = false;
    bool cycle_ok = false;
    std::string fail_phase;  // empty when the whole cycle completed
    std::vector<std::pair<std::string, double>> phase_end_voltages;
    double elapsed_s = 0.0;  // time until completion or abort
    double v_end = 0.0;      // voltage at completion or abort
};

// Walks the cycle from v0, switching the load per phase. The instant the
// capacitor reaches v_min the cycle aborts (computed analytically, not by
// stepping); tx_ok reports whether the TX phase had completed by then.
CycleOutcome run_cycle(const DeviceConfig& config, double v0_volts);

// True iff the TX phase alone would end at or above v_min. Checks only the
// TX interval, never the receive windows; agrees with run_cycle's tx_ok.
bool transmit_precheck(const DeviceConfig& config, double v0_volts);

}  // namespace loracap
