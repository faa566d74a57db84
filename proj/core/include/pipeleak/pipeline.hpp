#pragma once

#include <optional>

#include "pipeleak/errors.hpp"

namespace pipeleak {

/// Geometry and gas-dynamic constants of the parallel pipeline system.
///
/// The model is two identical lines of length `length_L` joined at both ends.
/// `lin_coeff_2a` is the linearized friction coefficient (written 2a below):
/// pressure obeys the diffusion equation P_xx = (2a/c^2) P_t on each line,
/// and mass flux relates to pressure by G = -P_x / (2a).
struct PipelineSpec {
    double length_L;      ///< line length [m]
    double sound_speed_c; ///< isothermal sound speed [m/s]
    double lin_coeff_2a;  ///< linearized friction coefficient 2a [1/s]
    double gravity_g = 9.81; ///< gravitational acceleration [m/s^2]

    // Optional friction inputs; when present, lin_coeff_2a should equal
    // chernov_coefficient(friction_lambda, base_velocity_v0, diameter_d).
    std::optional<double> friction_lambda; ///< Darcy friction factor [-]
    std::optional<double> base_velocity_v0; ///< linearization velocity [m/s]
    std::optional<double> diameter_d;      ///< pipe diameter [m]

    /// Throws InvalidGeometry / InvalidGas when an invariant is violated.
    void validate() const;
};

/// Boundary data of the steady pre-leak regime.
struct FlowBoundary {
    double inlet_pressure_P1;  ///< inlet pressure [Pa]
    double base_mass_flux_G0;  ///< per-line base mass flux [Pa*s/m]
    double steady_gradient_s0; ///< steady hydraulic gradient [Pa/m]

    /// Throws InvalidBoundary when an invariant is violated (the gradient
    /// check needs the line length, hence the spec argument).
    void validate(const PipelineSpec& spec) const;
};

/// Parameters of the exponential leak model: the leak sits at
/// `location_l` on the damaged line and its rate decays like e^(-beta*t),
/// calibrated by the dimensionless coefficient K.
struct LeakScenario {
    double location_l; ///< leak position along the damaged line [m]
    double coeff_K;    ///< calibration coefficient [-]
    double decay_beta; ///< leak decay rate [1/s]

    /// Throws InvalidScenario when an invariant is violated.
    void validate(const PipelineSpec& spec) const;
};

/// Linearized friction coefficient 2a = lambda * v0 / (2 d)  [1/s].
/// Throws InvalidGeometry for d <= 0 or negative lambda / v0.
double chernov_coefficient(double friction_lambda, double v0, double d);

/// Acoustic travel time distance / c  [s]. Throws InvalidGas for c <= 0.
double wave_delay(double distance, double c);

/// Fundamental eigenrate of the diffusion operator on [0, L] with the
/// cosine-mode expansion used by the closed-form solution:
/// alpha = pi^2 c^2 / (2a L^2)  [1/s]; mode n decays like e^(-alpha n^2 t).
double alpha_eigenrate(const PipelineSpec& spec);

/// Steady pre-leak pressure P1 - s0 * x  [Pa].
/// Throws OutOfDomain for x outside [0, L].
double steady_profile(const PipelineSpec& spec, const FlowBoundary& boundary,
                      double x);

}  // namespace pipeleak
