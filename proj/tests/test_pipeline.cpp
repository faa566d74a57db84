#include <doctest.h>

#include "pipeleak/pipeline.hpp"
#include "test_support.hpp"

using namespace pipeleak;
using testsupport::baseline_boundary;
using testsupport::baseline_leak;
using testsupport::baseline_spec;

TEST_CASE("PipelineSpec validation rejects nonphysical inputs") {
    PipelineSpec spec = baseline_spec();
    CHECK_NOTHROW(spec.validate());

    spec = baseline_spec();
    spec.length_L = 0.0;
    CHECK_THROWS_AS(spec.validate(), InvalidGeometry);

    spec = baseline_spec();
    spec.sound_speed_c = -1.0;
    CHECK_THROWS_AS(spec.validate(), InvalidGas);

    spec = baseline_spec();
    spec.lin_coeff_2a = 0.0;
    CHECK_THROWS_AS(spec.validate(), InvalidGas);

    spec = baseline_spec();
    spec.gravity_g = 0.0;
    CHECK_THROWS_AS(spec.validate(), InvalidGeometry);

    // Friction inputs are optional but must be consistent when present.
    spec = baseline_spec();
    spec.friction_lambda = 0.02;
    CHECK_THROWS_AS(spec.validate(), InvalidGeometry);  // no diameter
    spec.diameter_d = 0.5;
    CHECK_NOTHROW(spec.validate());
    spec.base_velocity_v0 = -2.0;
    CHECK_THROWS_AS(spec.validate(), InvalidGeometry);
}

TEST_CASE("FlowBoundary validation ties the gradient to the line length") {
    const PipelineSpec spec = baseline_spec();
    FlowBoundary boundary = baseline_boundary();
    CHECK_NOTHROW(boundary.validate(spec));

    boundary = baseline_boundary();
    boundary.inlet_pressure_P1 = 0.0;
    CHECK_THROWS_AS(boundary.validate(spec), InvalidBoundary);

    boundary = baseline_boundary();
    boundary.base_mass_flux_G0 = -1.0;
    CHECK_THROWS_AS(boundary.validate(spec), InvalidBoundary);

    boundary = baseline_boundary();
    boundary.steady_gradient_s0 = -0.5;
    CHECK_THROWS_AS(boundary.validate(spec), InvalidBoundary);

    // s0 * L = 5.5e5 exactly exhausts the inlet pressure: outlet would sit
    // at zero, which is rejected.
    boundary = baseline_boundary();
    boundary.steady_gradient_s0 = 5.5;
    CHECK_THROWS_AS(boundary.validate(spec), InvalidBoundary);
}

TEST_CASE("LeakScenario validation keeps the leak strictly interior") {
    const PipelineSpec spec = baseline_spec();
    LeakScenario leak = baseline_leak();
    CHECK_NOTHROW(leak.validate(spec));

    leak = baseline_leak();
    leak.location_l = 0.0;
    CHECK_THROWS_AS(leak.validate(spec), InvalidScenario);

    leak = baseline_leak();
    leak.location_l = spec.length_L;
    CHECK_THROWS_AS(leak.validate(spec), InvalidScenario);

    leak = baseline_leak();
    leak.coeff_K = -0.1;
    CHECK_THROWS_AS(leak.validate(spec), InvalidScenario);

    leak = baseline_leak();
    leak.decay_beta = -1e-6;
    CHECK_THROWS_AS(leak.validate(spec), InvalidScenario);
}

TEST_CASE("chernov_coefficient computes lambda*v0/(2d)") {
    CHECK(chernov_coefficient(0.02, 10.0, 0.5) == doctest::Approx(0.2));
    // Homogeneity: linear in lambda and v0, inverse in d.
    const double base = chernov_coefficient(0.03, 7.0, 0.8);
    CHECK(chernov_coefficient(0.06, 7.0, 0.8) == doctest::Approx(2.0 * base));
    CHECK(chernov_coefficient(0.03, 14.0, 0.8) == doctest::Approx(2.0 * base));
    CHECK(chernov_coefficient(0.03, 7.0, 1.6) == doctest::Approx(0.5 * base));
    CHECK(chernov_coefficient(0.0, 10.0, 0.5) == 0.0);

    CHECK_THROWS_AS(chernov_coefficient(0.02, 10.0, 0.0), InvalidGeometry);
    CHECK_THROWS_AS(chernov_coefficient(-0.02, 10.0, 0.5), InvalidGeometry);
    CHECK_THROWS_AS(chernov_coefficient(0.02, -10.0, 0.5), InvalidGeometry);
}

TEST_CASE("wave_delay gives the acoustic travel times of the 100 km line") {
    const double c = 383.3;
    CHECK(wave_delay(5.0e4, c) == doctest::Approx(130.446).epsilon(1e-4));
    CHECK(wave_delay(2.5e4, c) == doctest::Approx(65.223).epsilon(1e-4));
    CHECK(wave_delay(7.5e4, c) == doctest::Approx(195.669).epsilon(1e-4));
    CHECK(wave_delay(0.0, c) == 0.0);

    CHECK_THROWS_AS(wave_delay(1.0e4, 0.0), InvalidGas);
    CHECK_THROWS_AS(wave_delay(-1.0, c), InvalidGeometry);
}

TEST_CASE("alpha_eigenrate is pi^2 c^2 / (2a L^2)") {
    CHECK(alpha_eigenrate(baseline_spec()) ==
          doctest::Approx(1.4500317e-3).epsilon(1e-6));

    // Unit check: c = 1, 2a = 1, L = pi gives exactly 1.
    PipelineSpec unit;
    unit.length_L = 3.14159265358979323846;
    unit.sound_speed_c = 1.0;
    unit.lin_coeff_2a = 1.0;
    CHECK(alpha_eigenrate(unit) == doctest::Approx(1.0).epsilon(1e-12));

    // Doubling the length divides the rate by four.
    PipelineSpec doubled = baseline_spec();
    doubled.length_L *= 2.0;
    CHECK(alpha_eigenrate(doubled) ==
          doctest::Approx(alpha_eigenrate(baseline_spec()) / 4.0));
}

TEST_CASE("steady_profile is the linear pre-leak pressure") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    CHECK(steady_profile(spec, boundary, 0.0) == doctest::Approx(5.5e5));
    CHECK(steady_profile(spec, boundary, 5.0e4) == doctest::Approx(4.75e5));
    CHECK(steady_profile(spec, boundary, 1.0e5) == doctest::Approx(4.0e5));

    CHECK_THROWS_AS(steady_profile(spec, boundary, -1.0), OutOfDomain);
    CHECK_THROWS_AS(steady_profile(spec, boundary, 1.0e5 + 1.0), OutOfDomain);
}

TEST_CASE("library errors carry a stable kind and type name") {
    try {
        wave_delay(1.0, 0.0);
        FAIL("expected InvalidGas");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
        CHECK(std::string(e.name()) == "InvalidGas");
        CHECK(std::string(e.what()).find("wave_delay") != std::string::npos);
    }
}
