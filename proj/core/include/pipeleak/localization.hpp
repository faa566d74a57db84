#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pipeleak/analytic.hpp"
#include "pipeleak/calibration.hpp"
#include "pipeleak/pipeline.hpp"

namespace pipeleak {

// How the matching window is chosen.  FixedWindow uses the configured
// [fixed_window_lo, fixed_window_hi] seconds (the default [65, 130] s is the
// acoustic-delay window of the bundled 100 km scenario); DelayScaled runs two
// passes with the window [tau, 2*tau] recomputed from the current estimate's
// wave delay tau = l/c.
enum class WindowPolicy { FixedWindow, DelayScaled };

struct SearchConfig {
    double l_grid_step = 1000.0;  // candidate spacing, meters
    bool refine = true;           // 100 m scan around the grid argmin
    WindowPolicy window_policy = WindowPolicy::DelayScaled;
    double fixed_window_lo = 65.0;
    double fixed_window_hi = 130.0;

    void validate() const;
};

struct LocalizationResult {
    double l_hat = 0.0;
    // (candidate location, mismatch) for every admissible grid candidate of
    // the final pass, in increasing location order.
    std::vector<std::pair<double, double>> objective_curve;
    std::pair<double, double> window{0.0, 0.0};
    // First time in the window where the normalized curves cross, if any.
    std::optional<double> intersection_time;
    double beta_used = 0.0;
};

// Location-dependent side of the matching identity: the inlet transient's
// modal sum sum_n cos(pi*n*l/L) * kernel_n(t) (times c_const).
double lhs_series(const PipelineSpec& spec, const LeakScenario& scenario,
                  const SeriesConfig& series, double t);

// Location-independent side, driven by the inlet decay alone:
// (2a*L/(K*g)) * (1 - ramp(beta,t)/4 - exp(-beta*t)).
// Throws NoLeakModel when the scenario's K is zero (no leak term to match).
double rhs_curve(const PipelineSpec& spec, const FlowBoundary& boundary,
                 const LeakScenario& scenario, double t);

// Scales a curve by its largest magnitude.  Throws DegenerateCurve when the
// curve is empty or identically zero.
std::vector<double> normalize_curve(const std::vector<double>& curve);

// Estimates the leak location from an observed inlet pressure series.
//
// The decay rate is fitted from the series (log-linear); candidates on a
// l_grid_step grid are scored by the RMS difference of the two normalized
// curves, sampled at whole seconds inside the window and gated to t >=
// tau(candidate); candidates with fewer than two admissible samples are
// skipped.  The smallest-mismatch candidate wins (ties to the smaller
// location), optionally refined by a 100 m scan.  `nominal` supplies the
// leak coefficient K (and is the fallback beta for reporting); the fitted
// rate is what the curves use, returned as beta_used.
//
// Throws NoLeakDetected when the fitted decay rate is below 1e-8 1/s and
// WindowEmpty when the window holds no whole-second samples or no candidate
// is admissible.
LocalizationResult localize(const PipelineSpec& spec,
                            const FlowBoundary& boundary,
                            const LeakScenario& nominal,
                            const SeriesConfig& series,
                            const PressureSeries& observed,
                            const SearchConfig& search);

}  // namespace pipeleak
