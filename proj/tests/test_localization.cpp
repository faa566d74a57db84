#include <doctest.h>

#include <cmath>
#include <vector>

#include "pipeleak/localization.hpp"
#include "test_support.hpp"

using namespace pipeleak;
using testsupport::baseline_boundary;
using testsupport::baseline_leak;
using testsupport::baseline_spec;

namespace {

// Idealized observed inlet series: P1 * exp(-beta t) sampled every 300 s.
PressureSeries decay_series(double P1, double beta) {
    PressureSeries series;
    for (double t = 0.0; t <= 1500.0 + 1e-9; t += 300.0)
        series.samples.push_back({t, inlet_model(P1, beta, t)});
    return series;
}

LeakScenario calibrated_leak() {
    LeakScenario leak = baseline_leak();
    leak.coeff_K = calibrate_k(baseline_spec(), baseline_boundary());
    return leak;
}

}  // namespace

TEST_CASE("SearchConfig validation") {
    SearchConfig search;
    CHECK_NOTHROW(search.validate());

    search = SearchConfig{};
    search.l_grid_step = 0.0;
    CHECK_THROWS_AS(search.validate(), InvalidConfig);

    search = SearchConfig{};
    search.fixed_window_lo = 0.0;
    CHECK_THROWS_AS(search.validate(), InvalidConfig);

    search = SearchConfig{};
    search.fixed_window_hi = search.fixed_window_lo;
    CHECK_THROWS_AS(search.validate(), InvalidConfig);
}

TEST_CASE("lhs_series evaluates the location-dependent modal sum") {
    const PipelineSpec spec = baseline_spec();
    const SeriesConfig series;
    const LeakScenario leak = calibrated_leak();

    CHECK(lhs_series(spec, leak, series, 120.0) ==
          doctest::Approx(-5.9912).epsilon(1e-3));
    CHECK(lhs_series(spec, leak, series, 0.0) == 0.0);
    CHECK_THROWS_AS(lhs_series(spec, leak, series, -1.0), InvalidTime);

    // c_const scales the sum linearly.
    SeriesConfig doubled = series;
    doubled.c_const = 2.0;
    CHECK(lhs_series(spec, leak, doubled, 120.0) ==
          doctest::Approx(2.0 * lhs_series(spec, leak, series, 120.0))
              .epsilon(1e-12));
}

TEST_CASE("rhs_curve evaluates the decay-driven side of the identity") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    const LeakScenario leak = calibrated_leak();

    CHECK(rhs_curve(spec, boundary, leak, 120.0) ==
          doctest::Approx(-37910.18).epsilon(1e-4));
    // Saturation value for t >> 1/beta: the ramp term dominates.
    CHECK(rhs_curve(spec, boundary, leak, 1e7) ==
          doctest::Approx(-3.0862e6).epsilon(1e-3));
    CHECK(rhs_curve(spec, boundary, leak, 0.0) == 0.0);

    LeakScenario no_leak = leak;
    no_leak.coeff_K = 0.0;
    CHECK_THROWS_AS(rhs_curve(spec, boundary, no_leak, 120.0), NoLeakModel);
    CHECK_THROWS_AS(rhs_curve(spec, boundary, leak, -5.0), InvalidTime);
}

TEST_CASE("normalize_curve divides by the largest magnitude") {
    const std::vector<double> curve = {2.0, -4.0, 1.0};
    const std::vector<double> normalized = normalize_curve(curve);
    REQUIRE(normalized.size() == 3);
    CHECK(normalized[0] == doctest::Approx(0.5));
    CHECK(normalized[1] == doctest::Approx(-1.0));
    CHECK(normalized[2] == doctest::Approx(0.25));

    CHECK_THROWS_AS(normalize_curve({}), DegenerateCurve);
    CHECK_THROWS_AS(normalize_curve({0.0, 0.0}), DegenerateCurve);
}

TEST_CASE("localize with the fixed acoustic window on the baseline decay") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    const LeakScenario nominal = baseline_leak();
    const SeriesConfig series;
    const PressureSeries observed = decay_series(5.5e5, 1.03e-4);

    SearchConfig search;
    search.window_policy = WindowPolicy::FixedWindow;

    const LocalizationResult result =
        localize(spec, boundary, nominal, series, observed, search);

    CHECK(result.beta_used == doctest::Approx(1.03e-4).epsilon(1e-10));
    CHECK(result.window.first == doctest::Approx(65.0));
    CHECK(result.window.second == doctest::Approx(130.0));
    // Candidates beyond ~49.4 km have acoustic delays past the window end,
    // so exactly the first 49 grid points are admissible.
    CHECK(result.objective_curve.size() == 49);
    for (std::size_t i = 0; i + 1 < result.objective_curve.size(); ++i)
        CHECK(result.objective_curve[i].first <
              result.objective_curve[i + 1].first);
    // The mismatch objective is nearly flat in location and bottoms out at
    // the admissibility edge, not at the true 25 km; this is the documented
    // insensitivity of the matching identity under this window.
    CHECK(result.l_hat == doctest::Approx(49400.0));

    SearchConfig coarse = search;
    coarse.refine = false;
    CHECK(localize(spec, boundary, nominal, series, observed, coarse).l_hat ==
          doctest::Approx(49000.0));
}

TEST_CASE("localize with the delay-scaled window drifts to the far end") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    const LeakScenario nominal = baseline_leak();
    const SeriesConfig series;
    const PressureSeries observed = decay_series(5.5e5, 1.03e-4);

    SearchConfig search;  // DelayScaled is the default policy
    const LocalizationResult result =
        localize(spec, boundary, nominal, series, observed, search);
    CHECK(result.l_hat == doctest::Approx(99900.0));
    CHECK(result.window.first > 130.0);
    CHECK(result.window.second == doctest::Approx(2.0 * result.window.first));
}

TEST_CASE("localize failure modes") {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary = baseline_boundary();
    const LeakScenario nominal = baseline_leak();
    const SeriesConfig series;

    // A flat series has no decay to localize.
    PressureSeries flat;
    for (double t = 0.0; t <= 1500.0; t += 300.0)
        flat.samples.push_back({t, 5.5e5});
    CHECK_THROWS_AS(
        localize(spec, boundary, nominal, series, flat, SearchConfig{}),
        NoLeakDetected);

    const PressureSeries observed = decay_series(5.5e5, 1.03e-4);

    // A window between whole seconds holds no sample times.
    SearchConfig no_samples;
    no_samples.window_policy = WindowPolicy::FixedWindow;
    no_samples.fixed_window_lo = 65.2;
    no_samples.fixed_window_hi = 65.8;
    CHECK_THROWS_AS(
        localize(spec, boundary, nominal, series, observed, no_samples),
        WindowEmpty);

    // A window before the first candidate's acoustic delay admits nobody.
    SearchConfig too_early;
    too_early.window_policy = WindowPolicy::FixedWindow;
    too_early.fixed_window_lo = 1.0;
    too_early.fixed_window_hi = 2.0;
    CHECK_THROWS_AS(
        localize(spec, boundary, nominal, series, observed, too_early),
        WindowEmpty);
}
