#include <doctest.h>

#include <cmath>
#include <string>

#include "pipeleak/calibration.hpp"
#include "test_support.hpp"

using namespace pipeleak;
using testsupport::baseline_boundary;
using testsupport::baseline_leak;
using testsupport::baseline_spec;
using testsupport::reference_inlet_series;

namespace {

PressureSeries exponential_series(double P1, double beta, double t_end,
                                  double dt) {
    PressureSeries series;
    for (double t = 0.0; t <= t_end + 1e-9; t += dt)
        series.samples.push_back({t, inlet_model(P1, beta, t)});
    return series;
}

}  // namespace

TEST_CASE("PressureSeries validation") {
    PressureSeries series = reference_inlet_series();
    CHECK_NOTHROW(series.validate());

    series.samples.clear();
    CHECK_THROWS_AS(series.validate(), InvalidSeries);

    series = reference_inlet_series();
    series.samples[2].p = 0.0;
    CHECK_THROWS_AS(series.validate(), InvalidSeries);

    series = reference_inlet_series();
    series.samples[3].t = series.samples[2].t;  // ties are rejected
    CHECK_THROWS_AS(series.validate(), InvalidSeries);
}

TEST_CASE("calibrate_k on the baseline scenario") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();

    // 2a c^2 G0 / P1 = 0.1 * 383.3^2 * 30 / 5.5e5
    CHECK(calibrate_k(spec, boundary, KMode::FluxScaled) ==
          doctest::Approx(0.80137576).epsilon(1e-7));
    CHECK(calibrate_k(spec, boundary, KMode::GravityScaled) ==
          doctest::Approx(0.08168968).epsilon(1e-6));
    CHECK(calibrate_k(spec, boundary, KMode::GravityScaled) ==
          doctest::Approx(calibrate_k(spec, boundary, KMode::FluxScaled) /
                          spec.gravity_g));

    // Linear in the base flux.
    FlowBoundary doubled = boundary;
    doubled.base_mass_flux_G0 *= 2.0;
    CHECK(calibrate_k(spec, doubled) ==
          doctest::Approx(2.0 * calibrate_k(spec, boundary)));

    FlowBoundary bad = boundary;
    bad.inlet_pressure_P1 = 0.0;
    CHECK_THROWS_AS(calibrate_k(spec, bad), InvalidBoundary);
}

TEST_CASE("leak_rate decays exponentially from the base flux") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    const LeakScenario leak = baseline_leak();

    CHECK(leak_rate(spec, boundary, leak, 0.0) == doctest::Approx(30.0));
    CHECK(leak_rate(spec, boundary, leak, 300.0) ==
          doctest::Approx(29.0872).epsilon(1e-4));
    CHECK(leak_rate(spec, boundary, leak, 1.0 / leak.decay_beta) ==
          doctest::Approx(30.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(leak_rate(spec, boundary, leak, -1.0), InvalidTime);
}

TEST_CASE("inlet_model is the pure exponential decay") {
    CHECK(inlet_model(5.5e5, 1.03e-4, 0.0) == doctest::Approx(5.5e5));
    CHECK(inlet_model(5.5e5, 1.03e-4, 600.0) ==
          doctest::Approx(5.17039e5).epsilon(1e-5));
    CHECK(inlet_model(5.5e5, 0.0, 1e4) == doctest::Approx(5.5e5));
}

TEST_CASE("fit_beta recovers a noiseless exponential to machine precision") {
    const double beta_true = 7.3e-4;
    const PressureSeries series =
        exponential_series(5.5e5, beta_true, 1500.0, 300.0);

    for (const BetaMethod method :
         {BetaMethod::LogLinearThroughOrigin, BetaMethod::NonlinearLS}) {
        const BetaFit fit = fit_beta(series, 5.5e5, method);
        CHECK(fit.beta == doctest::Approx(beta_true).epsilon(1e-10));
        CHECK(fit.rms_residual < 1e-6);
        CHECK(fit.sample_count == 6);
    }
}

TEST_CASE("fit_beta on the bundled reference series") {
    const PressureSeries series = reference_inlet_series();

    const BetaFit ll =
        fit_beta(series, 5.5e5, BetaMethod::LogLinearThroughOrigin);
    CHECK(ll.beta == doctest::Approx(3.651820e-4).epsilon(1e-5));
    CHECK(ll.rms_residual > 0.0);

    const BetaFit nls = fit_beta(series, 5.5e5, BetaMethod::NonlinearLS);
    CHECK(nls.beta == doctest::Approx(3.831755e-4).epsilon(1e-4));
    // The direct SSE minimum fits the samples at least as well in RMS terms
    // as any other rate; in particular no worse than the log-linear fit.
    CHECK(nls.rms_residual <= ll.rms_residual + 1e-9);
}

TEST_CASE("fit_beta handles non-decaying and degenerate input") {
    // Constant series: no decay, both methods report beta = 0.
    PressureSeries flat;
    for (double t = 0.0; t <= 1200.0; t += 300.0)
        flat.samples.push_back({t, 5.5e5});
    CHECK(fit_beta(flat, 5.5e5, BetaMethod::LogLinearThroughOrigin).beta ==
          0.0);
    CHECK(fit_beta(flat, 5.5e5, BetaMethod::NonlinearLS).beta == 0.0);

    // Too few samples.
    PressureSeries two;
    two.samples = {{0.0, 5.5e5}, {300.0, 4.2e5}};
    CHECK_THROWS_AS(fit_beta(two, 5.5e5), InsufficientData);

    // A sample above P1 contradicts the decay model.
    PressureSeries rising = reference_inlet_series();
    rising.samples[4].p = 5.6e5;
    CHECK_THROWS_AS(fit_beta(rising, 5.5e5), NonDecayingData);

    // All samples at or before t = 0 leave the rate undetermined.
    PressureSeries early;
    early.samples = {{-600.0, 5.5e5}, {-300.0, 5.5e5}, {0.0, 5.5e5}};
    CHECK_THROWS_AS(fit_beta(early, 5.5e5), DegenerateTimes);

    CHECK_THROWS_AS(fit_beta(flat, 0.0), InvalidBoundary);
}

TEST_CASE("beta_comparison_note flags disagreement with a reference rate") {
    const PressureSeries series = reference_inlet_series();
    const BetaFit fit =
        fit_beta(series, 5.5e5, BetaMethod::LogLinearThroughOrigin);

    const std::string disagree = beta_comparison_note(fit, 1.03e-4);
    CHECK(disagree.find("differs from the reference") != std::string::npos);
    CHECK(disagree.find("factor of 3.5") != std::string::npos);

    const std::string agree = beta_comparison_note(fit, fit.beta * 1.005);
    CHECK(agree.find("consistent with the reference") != std::string::npos);

    const std::string no_ref = beta_comparison_note(fit, 0.0);
    CHECK(no_ref.find("no positive reference") != std::string::npos);
}
