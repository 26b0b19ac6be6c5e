#include "loracap/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace loracap {

namespace {

// Below this distance from the asymptote a target counts as unreachable
// rather than producing an astronomically large crossing time.
constexpr double kAsymptoteEpsVolts = 1e-12;

void check_interval(const IntervalSpec& s) {
    if (!(s.c_farads > 0.0))
        throw std::invalid_argument("interval: c_farads must be positive");
    if (!(s.r_load_ohms > 0.0))
        throw std::invalid_argument("interval: r_load_ohms must be positive");
    if (!(s.harvester.e_volts > 0.0) || !(s.harvester.p_watts > 0.0) ||
        !(s.harvester.r_i_ohms > 0.0))
        throw std::invalid_argument("interval: harvester fields must be positive");
    if (!(s.v0_volts >= 0.0 && s.v0_volts <= s.harvester.e_volts))
        throw std::invalid_argument("interval: v0 must lie in [0, E]");
}

}  // namespace

double internal_resistance(double e_volts, double p_watts) {
    if (!(e_volts > 0.0))
        throw std::invalid_argument("harvester: e_volts must be positive");
    if (!(p_watts > 0.0))
        throw std::invalid_argument("harvester: p_watts must be positive");
    return e_volts * e_volts / p_watts;
}

Harvester make_harvester(double e_volts, double p_watts) {
    return Harvester{e_volts, p_watts, internal_resistance(e_volts, p_watts)};
}

double equivalent_resistance(double r_load_ohms, double r_i_ohms) {
    if (!(r_load_ohms > 0.0) || !(r_i_ohms > 0.0))
        throw std::invalid_argument("equivalent_resistance: resistances must be positive");
    return r_load_ohms * r_i_ohms / (r_load_ohms + r_i_ohms);
}

double steady_state_voltage(double r_load_ohms, const Harvester& harvester) {
    if (!(r_load_ohms > 0.0))
        throw std::invalid_argument("steady_state_voltage: r_load must be positive");
    if (!(harvester.e_volts > 0.0) || !(harvester.r_i_ohms > 0.0))
        throw std::invalid_argument("steady_state_voltage: harvester fields must be positive");
    return harvester.e_volts * r_load_ohms / (r_load_ohms + harvester.r_i_ohms);
}

double time_constant(const IntervalSpec& spec) {
    check_interval(spec);
    return equivalent_resistance(spec.r_load_ohms, spec.harvester.r_i_ohms) * spec.c_farads;
}

double voltage_after(const IntervalSpec& spec, double t_seconds) {
    check_interval(spec);
    if (!(t_seconds >= 0.0))
        throw std::invalid_argument("voltage_after: t must be >= 0");
    const double r_eq = equivalent_resistance(spec.r_load_ohms, spec.harvester.r_i_ohms);
    const double decay = std::exp(-t_seconds / (r_eq * spec.c_farads));
    return spec.harvester.e_volts * (r_eq / spec.harvester.r_i_ohms) * (1.0 - decay) +
           spec.v0_volts * decay;
}

std::optional<double> time_to_reach(const IntervalSpec& spec, double v_target) {
    check_interval(spec);
    if (v_target == spec.v0_volts)
        return 0.0;
    const double v_inf = steady_state_voltage(spec.r_load_ohms, spec.harvester);
    if (std::abs(v_target - v_inf) < kAsymptoteEpsVolts)
        return std::nullopt;
    const double ratio = (spec.v0_volts - v_inf) / (v_target - v_inf);
    // t >= 0 exactly when the ratio is >= 1: the target lies strictly
    // between the start and the asymptote.
    if (!(ratio >= 1.0))
        return std::nullopt;
    const double r_eq = equivalent_resistance(spec.r_load_ohms, spec.harvester.r_i_ohms);
    return r_eq * spec.c_farads * std::log(ratio);
}

}  // namespace loracap
