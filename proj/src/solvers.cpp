#include "loracap/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace loracap {

namespace {

constexpr double kVoltageTol = 1e-5;     // absolute, volts
constexpr double kCapacitanceRelTol = 1e-4;
constexpr double kCapacitanceLo = 1e-6;  // farads
constexpr double kCapacitanceHi = 1.0;

}  // namespace

FeasibilityResult min_start_voltage(const DeviceConfig& config) {
    validate(config);
    const double e = config.harvester.e_volts;
    const double v_min = config.v_min_volts;

    FeasibilityResult res;
    const CycleOutcome from_full = run_cycle(config, e);
    if (!from_full.cycle_ok) {
        res.feasible = false;
        res.binding_phase = from_full.fail_phase;
        return res;
    }
    if (run_cycle(config, v_min).cycle_ok) {
        res.value = v_min;
        res.feasible = true;
        return res;
    }

    // cycle_ok is monotone in the start voltage, so bisect the boundary.
    double lo = v_min;  // fails
    double hi = e;      // succeeds
    while (hi - lo > kVoltageTol) {
        const double mid = 0.5 * (lo + hi);
        if (run_cycle(config, mid).cycle_ok)
            hi = mid;
        else
            lo = mid;
    }
    res.value = hi;
    res.feasible = true;
    res.binding_phase = run_cycle(config, lo).fail_phase;
    return res;
}

FeasibilityResult min_capacitance(const DeviceConfig& config, double v_start_volts) {
    validate(config);
    if (!(v_start_volts >= config.v_min_volts && v_start_volts <= config.harvester.e_volts))
        throw std::invalid_argument("min_capacitance: v_start must lie in [v_min, E]");

    const auto outcome_at = [&](double c) {
        DeviceConfig d = config;
        d.c_farads = c;
        return run_cycle(d, v_start_volts);
    };

    FeasibilityResult res;
    const CycleOutcome at_hi = outcome_at(kCapacitanceHi);
    if (!at_hi.cycle_ok) {
        res.feasible = false;
        res.binding_phase = at_hi.fail_phase;
        return res;
    }
    if (outcome_at(kCapacitanceLo).cycle_ok) {
        res.value = kCapacitanceLo;
        res.feasible = true;
        return res;
    }

    // Larger C slows every voltage drop, so the success region is an
    // up-set; bisect in log space.
    double lo = kCapacitanceLo;  // fails
    double hi = kCapacitanceHi;  // succeeds
    while (hi / lo > 1.0 + kCapacitanceRelTol) {
        const double mid = std::sqrt(lo * hi);
        if (outcome_at(mid).cycle_ok)
            hi = mid;
        else
            lo = mid;
    }
    res.value = hi;
    res.feasible = true;
    res.binding_phase = outcome_at(lo).fail_phase;
    return res;
}

FeasibilityResult min_capacitance(const DeviceConfig& config) {
    return min_capacitance(config, config.harvester.e_volts);
}

std::optional<double> wake_time(const DeviceConfig& config, double v_start_volts,
                                double threshold_fraction) {
    validate(config);
    if (!(threshold_fraction >= 0.0 && threshold_fraction <= 1.0))
        throw std::invalid_argument("wake_time: threshold_fraction must lie in [0, 1]");
    if (!(v_start_volts >= 0.0 && v_start_volts <= config.harvester.e_volts))
        throw std::invalid_argument("wake_time: v_start must lie in [0, E]");
    const double target = threshold_fraction * config.harvester.e_volts;
    if (v_start_volts > target)
        throw std::invalid_argument("wake_time: v_start must not exceed the target threshold");
    const IntervalSpec iv{v_start_volts, config.loads.at(SystemState::Off), config.c_farads,
                          config.harvester};
    return time_to_reach(iv, target);
}

}  // namespace loracap
