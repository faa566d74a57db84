#include "pipeleak/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pipeleak {

namespace {

constexpr double kDecayTolerance = 1e-6;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

double sse_gradient(const PressureSeries& series, double P1, double b) {
    double g = 0.0;
    for (const auto& s : series.samples) {
        const double model = P1 * std::exp(-b * s.t);
        g += 2.0 * (s.p - model) * P1 * s.t * std::exp(-b * s.t);
    }
    return g;
}

double rms_residual(const PressureSeries& series, double P1, double beta) {
    double acc = 0.0;
    for (const auto& s : series.samples) {
        const double r = s.p - inlet_model(P1, beta, s.t);
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(series.samples.size()));
}

double fit_loglinear(const PressureSeries& series, double P1) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& s : series.samples) {
        if (s.t <= 0.0) continue;
        num -= s.t * std::log(s.p / P1);
        den += s.t * s.t;
    }
    return std::max(0.0, num / den);
}

double fit_nonlinear(const PressureSeries& series, double P1) {
    double b0 = fit_loglinear(series, P1);
    if (b0 == 0.0) {
        // Log-linear says "no decay"; keep beta = 0 unless the SSE actually
        // decreases away from zero.
        if (sse_gradient(series, P1, 1e-12) >= 0.0) return 0.0;
        b0 = 1e-6;
    }
    double lo = b0 / 50.0;
    double hi = b0 * 50.0;
    for (int i = 0; i < 4 && sse_gradient(series, P1, lo) > 0.0 && lo > 1e-18;
         ++i)
        lo /= 10.0;
    for (int i = 0; i < 4 && sse_gradient(series, P1, hi) < 0.0 && hi < 1.0;
         ++i)
        hi *= 10.0;
    if (sse_gradient(series, P1, lo) > 0.0) return 0.0;  // minimum at beta -> 0
    if (sse_gradient(series, P1, hi) < 0.0) return hi;   // monotone decreasing
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (sse_gradient(series, P1, mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void PressureSeries::validate() const {
    if (samples.empty())
        throw InvalidSeries("PressureSeries: at least one sample required");
    double prev_t = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].p > 0.0))
            throw InvalidSeries("PressureSeries: sample " + std::to_string(i) +
                                " has nonpositive pressure");
        if (!(samples[i].t > prev_t))
            throw InvalidSeries("PressureSeries: sample times must be "
                                "strictly increasing (sample " +
                                std::to_string(i) + ")");
        prev_t = samples[i].t;
    }
}

double calibrate_k(const PipelineSpec& spec, const FlowBoundary& boundary,
                   KMode mode) {
    spec.validate();
    if (!(boundary.inlet_pressure_P1 > 0.0))
        throw InvalidBoundary("calibrate_k: inlet pressure must be positive");
    const double base = spec.lin_coeff_2a * spec.sound_speed_c *
                        spec.sound_speed_c * boundary.base_mass_flux_G0 /
                        boundary.inlet_pressure_P1;
    return mode == KMode::FluxScaled ? base : base / spec.gravity_g;
}

double leak_rate(const PipelineSpec& spec, const FlowBoundary& boundary,
                 const LeakScenario& scenario, double t) {
    spec.validate();
    scenario.validate(spec);
    if (t < 0.0)
        throw InvalidTime("leak_rate: t must be nonnegative, got " +
                          std::to_string(t));
    return boundary.base_mass_flux_G0 * std::exp(-scenario.decay_beta * t);
}

double inlet_model(double P1, double beta, double t) {
    return P1 * std::exp(-beta * t);
}

BetaFit fit_beta(const PressureSeries& series, double P1, BetaMethod method) {
    series.validate();
    if (!(P1 > 0.0))
        throw InvalidBoundary("fit_beta: P1 must be positive");
    if (series.samples.size() < 3)
        throw InsufficientData("fit_beta: got " +
                               std::to_string(series.samples.size()) +
                               " samples, need at least 3");
    for (const auto& s : series.samples)
        if (s.p > P1 * (1.0 + kDecayTolerance))
            throw NonDecayingData(
                "fit_beta: sample at t = " + std::to_string(s.t) +
                " exceeds P1; data does not decay from P1");
    const bool any_positive_time =
        std::any_of(series.samples.begin(), series.samples.end(),
                    [](const auto& s) { return s.t > 0.0; });
    if (!any_positive_time)
        throw DegenerateTimes(
            "fit_beta: no sample has t > 0; decay rate is undetermined");

    BetaFit fit;
    fit.method = method;
    fit.sample_count = series.samples.size();
    fit.beta = method == BetaMethod::LogLinearThroughOrigin
                   ? fit_loglinear(series, P1)
                   : fit_nonlinear(series, P1);
    fit.rms_residual = rms_residual(series, P1, fit.beta);
    return fit;
}

std::string beta_comparison_note(const BetaFit& fit, double reference_beta) {
    if (!(reference_beta > 0.0))
        return "note: no positive reference decay rate to compare against";
    const double ratio = fit.beta / reference_beta;
    if (std::abs(ratio - 1.0) <= 0.01)
        return "note: fitted beta " + fmt(fit.beta) +
               " 1/s is consistent with the reference " +
               fmt(reference_beta) + " 1/s";
    char rbuf[32];
    std::snprintf(rbuf, sizeof rbuf, "%.2f", ratio);
    return "note: fitted beta " + fmt(fit.beta) +
           " 1/s differs from the reference " + fmt(reference_beta) +
           " 1/s by a factor of " + rbuf;
}

}  // namespace pipeleak
