#include "loracap/simkit.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace loracap {

namespace {

// Voltage dt seconds into a cycle that started at v0. Only asked for
// instants inside the busy window, which an abort would have truncated, so
// a plain phase walk suffices.
double voltage_within_cycle(const DeviceConfig& cfg, const std::vector<Phase>& phases,
                            double v0, double dt) {
    double v = v0;
    for (const Phase& ph : phases) {
        const IntervalSpec iv{v, cfg.loads.at(ph.state), cfg.c_farads, cfg.harvester};
        if (dt <= ph.duration_s)
            return voltage_after(iv, dt);
        v = voltage_after(iv, ph.duration_s);
        dt -= ph.duration_s;
    }
    return v;
}

}  // namespace

SimResult simulate(const DeviceConfig& device, const TrafficConfig& traffic,
                   double initial_v_volts, SystemState initial_state,
                   bool record_timeline) {
    validate(device);
    if (!(traffic.interval_s > 0.0))
        throw std::invalid_argument("traffic.interval_s must be positive");
    if (traffic.n_packets < 1)
        throw std::invalid_argument("traffic.n_packets must be >= 1");
    if (initial_state != SystemState::Off && initial_state != SystemState::Sleep)
        throw std::invalid_argument("simulate: initial state must be off or sleep");
    if (!(initial_v_volts >= 0.0 && initial_v_volts <= device.harvester.e_volts))
        throw std::invalid_argument("simulate: initial voltage must lie in [0, E]");
    if (initial_state == SystemState::Sleep && initial_v_volts < device.v_min_volts)
        throw std::invalid_argument("simulate: a sleeping device needs at least v_min");

    const auto phases = cycle_phases(device);
    SimResult res;

    double t = 0.0;
    double v = initial_v_volts;
    SystemState state = initial_state;
    double busy_start = 0.0, busy_v0 = 0.0, busy_until = 0.0;

    // Cycle completions are known as soon as the cycle starts; hold that
    // event back until every earlier-timestamped event has been emitted.
    std::optional<TraceEvent> pending;
    const auto emit = [&](double te, std::string ev, double vv) {
        if (!record_timeline)
            return;
        if (pending && pending->t_s <= te) {
            res.timeline.push_back(std::move(*pending));
            pending.reset();
        }
        res.timeline.push_back({te, std::move(ev), vv});
    };

    emit(0.0, "start", v);

    // Walks the off/sleep machine up to t_target; every transition instant
    // comes from time_to_reach, never from stepping.
    const auto advance_to = [&](double t_target) {
        while (t < t_target) {
            if (state == SystemState::Off) {
                const IntervalSpec iv{v, device.loads.at(SystemState::Off), device.c_farads,
                                      device.harvester};
                std::optional<double> wake;
                if (v >= device.v_sl_volts)
                    wake = 0.0;
                else
                    wake = time_to_reach(iv, device.v_sl_volts);
                if (wake && t + *wake <= t_target) {
                    res.off_time_s += *wake;
                    t += *wake;
                    v = std::max(v, device.v_sl_volts);
                    state = SystemState::Sleep;
                    emit(t, "wake", v);
                } else {
                    res.off_time_s += t_target - t;
                    v = voltage_after(iv, t_target - t);
                    t = t_target;
                }
            } else {  // Sleep
                const IntervalSpec iv{v, device.loads.at(SystemState::Sleep), device.c_farads,
                                      device.harvester};
                std::optional<double> deplete;
                if (v > device.v_min_volts)
                    deplete = time_to_reach(iv, device.v_min_volts);
                else
                    deplete = 0.0;
                if (deplete && t + *deplete <= t_target) {
                    t += *deplete;
                    v = device.v_min_volts;
                    state = SystemState::Off;
                    emit(t, "off", v);
                } else {
                    v = voltage_after(iv, t_target - t);
                    t = t_target;
                }
            }
        }
    };

    for (long k = 1; k <= traffic.n_packets; ++k) {
        const double t_pkt = static_cast<double>(k) * traffic.interval_s;
        res.attempted += 1;

        if (busy_until > t_pkt) {
            emit(t_pkt, "packet_lost_busy",
                 voltage_within_cycle(device, phases, busy_v0, t_pkt - busy_start));
            continue;
        }
        advance_to(t_pkt);

        if (state == SystemState::Off) {
            emit(t_pkt, "packet_lost_off", v);
            continue;
        }
        if (!transmit_precheck(device, v)) {
            emit(t_pkt, "packet_lost_precheck", v);
            continue;
        }

        emit(t_pkt, "cycle_start", v);
        const CycleOutcome out = run_cycle(device, v);
        if (out.tx_ok)
            res.tx_success += 1;
        if (out.cycle_ok)
            res.cycle_success += 1;

        busy_start = t_pkt;
        busy_v0 = v;
        busy_until = t_pkt + out.elapsed_s;
        t = busy_until;
        v = out.v_end;
        if (out.cycle_ok && v > device.v_min_volts)
            state = SystemState::Sleep;
        else
            state = SystemState::Off;  // aborted, or completed grazing v_min
        if (record_timeline) {
            pending = TraceEvent{t, out.cycle_ok ? "cycle_ok" : "cycle_abort:" + out.fail_phase,
                                 v};
        }
    }
    if (pending)
        res.timeline.push_back(std::move(*pending));

    res.pdr_tx = static_cast<double>(res.tx_success) / static_cast<double>(res.attempted);
    res.pdr_cycle = static_cast<double>(res.cycle_success) / static_cast<double>(res.attempted);
    return res;
}

SimResult simulate(const DeviceConfig& device, const TrafficConfig& traffic) {
    return simulate(device, traffic, device.v_min_volts, SystemState::Off);
}

std::vector<SweepRow> sweep(const DeviceConfig& device_template,
                            const TrafficConfig& traffic_template, const SweepAxes& axes) {
    validate(device_template);
    const double e = device_template.harvester.e_volts;

    const auto axis_d = [](const std::vector<double>& ax, double fallback) {
        return ax.empty() ? std::vector<double>{fallback} : ax;
    };
    const auto axis_i = [](const std::vector<int>& ax, int fallback) {
        return ax.empty() ? std::vector<int>{fallback} : ax;
    };

    const auto vsl = axis_d(axes.v_sl_fraction, device_template.v_sl_volts / e);
    const auto intervals = axis_d(axes.interval_s, traffic_template.interval_s);
    const auto sfs = axis_i(axes.sf, device_template.phy.sf);
    const auto payloads = axis_i(axes.payload_bytes, device_template.phy.payload_bytes);
    const auto powers = axis_d(axes.p_harvester_w, device_template.harvester.p_watts);
    const auto caps = axis_d(axes.c_farads, device_template.c_farads);

    std::vector<SweepRow> rows;
    rows.reserve(vsl.size() * intervals.size() * sfs.size() * payloads.size() * powers.size() *
                 caps.size());
    for (double f : vsl)
        for (double interval : intervals)
            for (int sf : sfs)
                for (int pl : payloads)
                    for (double p : powers)
                        for (double c : caps) {
                            DeviceConfig d = device_template;
                            d.v_sl_volts = f * e;
                            d.phy.sf = sf;
                            d.phy.payload_bytes = pl;
                            d.harvester = make_harvester(e, p);
                            d.c_farads = c;
                            TrafficConfig tr = traffic_template;
                            tr.interval_s = interval;
                            rows.push_back({f, interval, sf, pl, p, c, simulate(d, tr)});
                        }
    return rows;
}

}  // namespace loracap
