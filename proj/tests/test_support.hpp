#pragma once

// Shared fixtures: the bundled 100 km twin-line scenario used throughout the
// test suite (same numbers as configs/baseline_scenario.conf).

#include "pipeleak/calibration.hpp"
#include "pipeleak/pipeline.hpp"

namespace testsupport {

inline pipeleak::PipelineSpec baseline_spec() {
    pipeleak::PipelineSpec spec;
    spec.length_L = 1.0e5;
    spec.sound_speed_c = 383.3;
    spec.lin_coeff_2a = 0.1;
    spec.gravity_g = 9.81;
    return spec;
}

inline pipeleak::FlowBoundary baseline_boundary() {
    pipeleak::FlowBoundary boundary;
    boundary.inlet_pressure_P1 = 5.5e5;
    boundary.base_mass_flux_G0 = 30.0;
    boundary.steady_gradient_s0 = 1.5;
    return boundary;
}

inline pipeleak::LeakScenario baseline_leak() {
    pipeleak::LeakScenario scenario;
    scenario.location_l = 2.5e4;
    scenario.coeff_K = 0.802;
    scenario.decay_beta = 1.03e-4;
    return scenario;
}

// The six reference inlet samples bundled as data/reference_inlet_decay.csv.
inline pipeleak::PressureSeries reference_inlet_series() {
    pipeleak::PressureSeries series;
    series.samples = {{0.0, 5.500e5},   {300.0, 4.238e5}, {600.0, 4.037e5},
                      {900.0, 3.830e5}, {1200.0, 3.621e5}, {1500.0, 3.411e5}};
    return series;
}

}  // namespace testsupport
