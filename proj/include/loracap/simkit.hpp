#pragma once

// Deterministic simulation of periodic uplink traffic over the intermittent
// device. Time advances analytically from event to event; there is no tick
// and no randomness, so identical inputs give bit-identical results.

#include "loracap/device.hpp"

#include <string>
#include <vector>

namespace loracap {

struct TrafficConfig {
    double interval_s = 60.0;
    long n_packets = 1000;
};

struct TraceEvent {
    double t_s;
    std::string event;
    double v_volts;
};

struct SimResult {
    long attempted = 0;
    long tx_success = 0;
    long cycle_success = 0;
    double pdr_tx = 0.0;
    double pdr_cycle = 0.0;
    double off_time_s = 0.0;           // off-state time within [0, n*interval]
    std::vector<TraceEvent> timeline;  // filled only when requested
};

// Packets are scheduled at t = k * interval for k = 1..n_packets. A packet
// finds the device off, mid-cycle, or asleep; only the last can lead to a
// transmission (precheck, then run_cycle). Between packets the device
// sleeps, turning off at v_min and waking at v_sl, both instants computed
// with time_to_reach.
SimResult simulate(const DeviceConfig& device, const TrafficConfig& traffic,
                   double initial_v_volts, SystemState initial_state,
                   bool record_timeline = false);

// Cold start: off at v_min.
SimResult simulate(const DeviceConfig& device, const TrafficConfig& traffic);

// Cartesian sweep axes; an empty axis keeps the template's value. Rows are
// emitted with the axes nested in declaration order (v_sl_fraction is the
// outermost, c_farads the innermost loop).
struct SweepAxes {
    std::vector<double> v_sl_fraction;
    std::vector<double> interval_s;
    std::vector<int> sf;
    std::vector<int> payload_bytes;
    std::vector<double> p_harvester_w;
    std::vector<double> c_farads;
};

// One grid point: the effective parameter values plus the simulation result.
struct SweepRow {
    double v_sl_fraction;
    double interval_s;
    int sf;
    int payload_bytes;
    double p_harvester_w;
    double c_farads;
    SimResult result;
};

// Runs one cold-start simulation per grid point, in deterministic order.
std::vector<SweepRow> sweep(const DeviceConfig& device_template,
                            const TrafficConfig& traffic_template,
                            const SweepAxes& axes);

}  // namespace loracap
