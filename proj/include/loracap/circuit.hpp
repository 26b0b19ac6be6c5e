#pragma once

// Closed-form transients of the harvester / capacitor / load circuit: a
// real voltage source (ideal E behind internal resistance r_i) feeding a
// capacitor C in parallel with the state-dependent load R_L. Every interval
// with a fixed load is a single exponential with time constant R_eq * C.

#include <optional>

namespace loracap {

// Constant-power harvester reduced to an ideal source with a series
// resistance r_i = E^2 / P.
struct Harvester {
    double e_volts = 3.3;
    double p_watts = 1e-3;
    double r_i_ohms = 3.3 * 3.3 / 1e-3;
};

// Builds a Harvester with the derived r_i; throws on non-positive inputs.
Harvester make_harvester(double e_volts, double p_watts);

// One charge/discharge interval: fixed load, fixed capacitance, known
// voltage at the start of the interval.
struct IntervalSpec {
    double v0_volts = 0.0;
    double r_load_ohms = 1.0;
    double c_farads = 1.0;
    Harvester harvester{};
};

// E^2 / P.
double internal_resistance(double e_volts, double p_watts);

// Parallel combination R_L * r_i / (R_L + r_i); always below both inputs.
double equivalent_resistance(double r_load_ohms, double r_i_ohms);

// Limit voltage of the interval, E * R_L / (R_L + r_i); strictly inside (0, E).
double steady_state_voltage(double r_load_ohms, const Harvester& harvester);

// R_eq * C.
double time_constant(const IntervalSpec& spec);

// Capacitor voltage t seconds into the interval:
//   E * (R_eq / r_i) * (1 - exp(-t / (R_eq C))) + v0 * exp(-t / (R_eq C))
double voltage_after(const IntervalSpec& spec, double t_seconds);

// Smallest t >= 0 with voltage_after(spec, t) == v_target, computed as
// R_eq * C * ln((v0 - Vinf) / (v_target - Vinf)). Returns nullopt when the
// trajectory never gets there: the target sits beyond the asymptote in the
// direction of travel, behind the start, or within 1e-12 V of Vinf (the
// asymptote is approached but never met).
std::optional<double> time_to_reach(const IntervalSpec& spec, double v_target);

}  // namespace loracap
