#include "pipeleak/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pipeleak {

void PipelineSpec::validate() const {
    if (!(length_L > 0.0))
        throw InvalidGeometry("PipelineSpec: length_L must be positive, got " +
                              std::to_string(length_L));
    if (!(sound_speed_c > 0.0))
        throw InvalidGas("PipelineSpec: sound_speed_c must be positive, got " +
                         std::to_string(sound_speed_c));
    if (!(lin_coeff_2a > 0.0))
        throw InvalidGas("PipelineSpec: lin_coeff_2a must be positive, got " +
                         std::to_string(lin_coeff_2a));
    if (!(gravity_g > 0.0))
        throw InvalidGeometry("PipelineSpec: gravity_g must be positive, got " +
                              std::to_string(gravity_g));
    const bool any_friction =
        friction_lambda.has_value() || base_velocity_v0.has_value() ||
        diameter_d.has_value();
    if (any_friction) {
        if (!diameter_d.has_value() || !(*diameter_d > 0.0))
            throw InvalidGeometry(
                "PipelineSpec: friction inputs require diameter_d > 0");
        if (base_velocity_v0.has_value() && *base_velocity_v0 < 0.0)
            throw InvalidGeometry(
                "PipelineSpec: base_velocity_v0 must be nonnegative");
        if (friction_lambda.has_value() && *friction_lambda < 0.0)
            throw InvalidGeometry(
                "PipelineSpec: friction_lambda must be nonnegative");
    }
}

void FlowBoundary::validate(const PipelineSpec& spec) const {
    if (!(inlet_pressure_P1 > 0.0))
        throw InvalidBoundary(
            "FlowBoundary: inlet_pressure_P1 must be positive, got " +
            std::to_string(inlet_pressure_P1));
    if (base_mass_flux_G0 < 0.0)
        throw InvalidBoundary(
            "FlowBoundary: base_mass_flux_G0 must be nonnegative");
    if (steady_gradient_s0 < 0.0)
        throw InvalidBoundary(
            "FlowBoundary: steady_gradient_s0 must be nonnegative");
    if (!(steady_gradient_s0 * spec.length_L < inlet_pressure_P1))
        throw InvalidBoundary(
            "FlowBoundary: steady gradient drives outlet pressure nonpositive "
            "(s0 * L >= P1)");
}

void LeakScenario::validate(const PipelineSpec& spec) const {
    if (!(location_l > 0.0) || !(location_l < spec.length_L))
        throw InvalidScenario(
            "LeakScenario: location_l must lie strictly inside (0, L), got " +
            std::to_string(location_l));
    if (coeff_K < 0.0)
        throw InvalidScenario("LeakScenario: coeff_K must be nonnegative");
    if (decay_beta < 0.0)
        throw InvalidScenario("LeakScenario: decay_beta must be nonnegative");
}

double chernov_coefficient(double friction_lambda, double v0, double d) {
    if (!(d > 0.0))
        throw InvalidGeometry(
            "chernov_coefficient: diameter must be positive, got " +
            std::to_string(d));
    if (friction_lambda < 0.0)
        throw InvalidGeometry(
            "chernov_coefficient: friction factor must be nonnegative");
    if (v0 < 0.0)
        throw InvalidGeometry(
            "chernov_coefficient: base velocity must be nonnegative");
    return friction_lambda * v0 / (2.0 * d);
}

double wave_delay(double distance, double c) {
    if (!(c > 0.0))
        throw InvalidGas("wave_delay: sound speed must be positive, got " +
                         std::to_string(c));
    if (distance < 0.0)
        throw InvalidGeometry("wave_delay: distance must be nonnegative");
    return distance / c;
}

double alpha_eigenrate(const PipelineSpec& spec) {
    spec.validate();
    const double pi = std::numbers::pi;
    return pi * pi * spec.sound_speed_c * spec.sound_speed_c /
           (spec.lin_coeff_2a * spec.length_L * spec.length_L);
}

double steady_profile(const PipelineSpec& spec, const FlowBoundary& boundary,
                      double x) {
    spec.validate();
    boundary.validate(spec);
    if (x < 0.0 || x > spec.length_L)
        throw OutOfDomain("steady_profile: x = " + std::to_string(x) +
                          " outside [0, " + std::to_string(spec.length_L) +
                          "]");
    return boundary.inlet_pressure_P1 - boundary.steady_gradient_s0 * x;
}

}  // namespace pipeleak
