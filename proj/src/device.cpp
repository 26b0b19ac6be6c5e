#include "loracap/device.hpp"

#include <cmath>
#include <stdexcept>

namespace loracap {

const char* to_string(SystemState state) {
    switch (state) {
        case SystemState::Off: return "off";
        case SystemState::Sleep: return "sleep";
        case SystemState::Idle: return "idle";
        case SystemState::Tx: return "tx";
        case SystemState::Listen: return "listen";
        case SystemState::Rx: return "rx";
    }
    return "unknown";
}

LoadTable sx1272_loads() {
    LoadTable t;
    t.at(SystemState::Off) = 600e3;
    t.at(SystemState::Sleep) = 589.286e3;
    t.at(SystemState::Idle) = 471.428e3;
    t.at(SystemState::Tx) = 117.811;      // +13 dBm
    t.at(SystemState::Listen) = 313.957;
    t.at(SystemState::Rx) = 294.354;
    return t;
}

DeviceConfig sx1272_paper_device() {
    return DeviceConfig{};
}

std::vector<std::string> validate(const DeviceConfig& config) {
    if (!(config.c_farads > 0.0))
        throw std::invalid_argument("device.c_farads must be positive");
    if (!(config.harvester.e_volts > 0.0) || !(config.harvester.p_watts > 0.0))
        throw std::invalid_argument("harvester e_volts and p_watts must be positive");
    if (config.harvester.r_i_ohms !=
        config.harvester.e_volts * config.harvester.e_volts / config.harvester.p_watts)
        throw std::invalid_argument(
            "harvester.r_i_ohms must equal e_volts^2 / p_watts (build it with make_harvester)");
    if (!(config.v_min_volts > 0.0 && config.v_min_volts < config.v_sl_volts &&
          config.v_sl_volts <= config.harvester.e_volts))
        throw std::invalid_argument("thresholds must satisfy 0 < v_min < v_sl <= E");
    if (!(config.rx1_delay_s > 0.0 && config.rx2_delay_s > config.rx1_delay_s))
        throw std::invalid_argument("window delays must satisfy rx2_delay > rx1_delay > 0");
    for (int i = 0; i < kSystemStateCount; ++i) {
        if (!(config.loads.r_ohms[i] > 0.0))
            throw std::invalid_argument(std::string("load resistance for state '") +
                                        to_string(static_cast<SystemState>(i)) +
                                        "' must be positive");
    }
    return validate(config.phy);
}

double load_current(SystemState state, const LoadTable& loads, double e_volts) {
    if (!(e_volts > 0.0))
        throw std::invalid_argument("load_current: e_volts must be positive");
    const double r = loads.at(state);
    if (!(r > 0.0))
        throw std::runtime_error(std::string("no usable load entry for state '") +
                                 to_string(state) + "'");
    return e_volts / r;
}

std::vector<Phase> cycle_phases(const DeviceConfig& config) {
    validate(config);
    const double toa = time_on_air(config.phy);
    const double rx1_listen = preamble_duration(config.phy);
    PhyConfig rx2_phy = config.phy;
    rx2_phy.sf = 12;  // RX2 always listens at SF12
    const double rx2_listen = preamble_duration(rx2_phy);
    const double idle2 = config.rx2_delay_s - config.rx1_delay_s - rx1_listen;
    if (idle2 < 0.0)
        throw std::runtime_error("rx1 listen window does not fit before the rx2 window opens");
    return {
        {SystemState::Tx, toa, "tx"},
        {SystemState::Idle, config.rx1_delay_s, "idle1"},
        {SystemState::Listen, rx1_listen, "rx1"},
        {SystemState::Idle, idle2, "idle2"},
        {SystemState::Listen, rx2_listen, "rx2"},
    };
}

namespace {

// Time until the interval crosses v_min from above, nullopt when it never
// does. A start exactly at v_min dies immediately unless the interval
// charges away from the threshold.
std::optional<double> depletion_time(const IntervalSpec& iv, double v_min) {
    if (iv.v0_volts < v_min)
        return 0.0;
    if (iv.v0_volts == v_min) {
        const double v_inf = steady_state_voltage(iv.r_load_ohms, iv.harvester);
        if (v_inf <= v_min)
            return 0.0;
        return std::nullopt;
    }
    return time_to_reach(iv, v_min);
}

}  // namespace

CycleOutcome run_cycle(const DeviceConfig& config, double v0_volts) {
    const auto phases = cycle_phases(config);
    if (!(v0_volts >= config.v_min_volts && v0_volts <= config.harvester.e_volts))
        throw std::invalid_argument("run_cycle: v0 must lie in [v_min, E]");

    CycleOutcome out;
    double v = v0_volts;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const Phase& ph = phases[i];
        const IntervalSpec iv{v, config.loads.at(ph.state), config.c_farads, config.harvester};
        const auto hit = depletion_time(iv, config.v_min_volts);
        if (hit && *hit <= ph.duration_s) {
            const bool at_phase_end = (*hit == ph.duration_s);
            out.elapsed_s += *hit;
            v = config.v_min_volts;
            out.phase_end_voltages.emplace_back(ph.label, v);
            if (ph.state == SystemState::Tx && at_phase_end)
                out.tx_ok = true;
            if (at_phase_end && i + 1 == phases.size())
                out.cycle_ok = true;  // grazed v_min exactly at cycle end
            else
                out.fail_phase = at_phase_end ? phases[i + 1].label : ph.label;
            out.v_end = v;
            return out;
        }
        out.elapsed_s += ph.duration_s;
        v = voltage_after(iv, ph.duration_s);
        out.phase_end_voltages.emplace_back(ph.label, v);
        if (ph.state == SystemState::Tx)
            out.tx_ok = true;
    }
    out.cycle_ok = true;
    out.v_end = v;
    return out;
}

bool transmit_precheck(const DeviceConfig& config, double v0_volts) {
    validate(config);
    if (!(v0_volts >= config.v_min_volts && v0_volts <= config.harvester.e_volts))
        throw std::invalid_argument("transmit_precheck: v0 must lie in [v_min, E]");
    const IntervalSpec iv{v0_volts, config.loads.at(SystemState::Tx), config.c_farads,
                          config.harvester};
    return voltage_after(iv, time_on_air(config.phy)) >= config.v_min_volts;
}

}  // namespace loracap
