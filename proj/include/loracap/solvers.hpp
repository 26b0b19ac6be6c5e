#pragma once

// Feasibility solvers built on the monotone success region of run_cycle:
// minimum cycle-start voltage, minimum capacitance, and off-state wake-up
// times.

#include "loracap/device.hpp"

#include <optional>

namespace loracap {

struct FeasibilityResult {
    std::optional<double> value;  // volts or farads depending on the solver
    bool feasible = false;
    std::string binding_phase;  // phase touching v_min at the boundary, if known
};

// Smallest start voltage in [v_min, E] from which a full cycle completes;
// bisection to 1e-5 V absolute. Infeasible when even a full capacitor
// cannot finish the cycle.
FeasibilityResult min_start_voltage(const DeviceConfig& config);

// Smallest capacitance in [1 uF, 1 F] such that a cycle started at v_start
// completes; log-space bisection to 1e-4 relative. The capacitance in
// `config` is ignored.
FeasibilityResult min_capacitance(const DeviceConfig& config, double v_start_volts);

// Same, starting from a full capacitor (v_start = E).
FeasibilityResult min_capacitance(const DeviceConfig& config);

// Time for an off device to charge from v_start to threshold_fraction * E;
// nullopt when the target sits at or above the off-state asymptote.
std::optional<double> wake_time(const DeviceConfig& config, double v_start_volts,
                                double threshold_fraction);

}  // namespace loracap
