#include "pipeleak/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pipeleak {

namespace {

constexpr double kMinDecayRate = 1e-8;
constexpr double kRefineStep = 100.0;

struct CandidateScore {
    double mismatch = std::numeric_limits<double>::infinity();
    std::optional<double> crossing;
    bool admissible = false;
};

// Whole-second sample times covering [lo, hi].
std::vector<double> window_samples(double lo, double hi) {
    std::vector<double> ts;
    for (double t = std::ceil(lo); t <= std::floor(hi) + 0.5; t += 1.0)
        ts.push_back(t);
    return ts;
}

CandidateScore score_candidate(const PipelineSpec& spec,
                               const FlowBoundary& boundary,
                               const SeriesConfig& series, double K,
                               double beta, double l,
                               const std::vector<double>& ts) {
    CandidateScore score;
    const double tau = wave_delay(l, spec.sound_speed_c);

    std::vector<double> kept;
    for (double t : ts)
        if (t >= tau) kept.push_back(t);
    if (kept.size() < 2) return score;

    LeakScenario candidate{l, K, beta};
    std::vector<double> lhs(kept.size()), rhs(kept.size());
    double max_l = 0.0, max_r = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        lhs[i] = lhs_series(spec, candidate, series, kept[i]);
        rhs[i] = rhs_curve(spec, boundary, candidate, kept[i]);
        max_l = std::max(max_l, std::abs(lhs[i]));
        max_r = std::max(max_r, std::abs(rhs[i]));
    }
    if (max_l == 0.0 || max_r == 0.0) return score;

    double sum_sq = 0.0;
    std::vector<double> diff(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        diff[i] = lhs[i] / max_l - rhs[i] / max_r;
        sum_sq += diff[i] * diff[i];
    }
    score.mismatch = std::sqrt(sum_sq / static_cast<double>(kept.size()));
    score.admissible = true;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        if (diff[i] == 0.0) {
            score.crossing = kept[i];
            break;
        }
        if (diff[i] * diff[i + 1] < 0.0) {
            score.crossing = kept[i] + (kept[i + 1] - kept[i]) * diff[i] /
                                           (diff[i] - diff[i + 1]);
            break;
        }
    }
    return score;
}

}  // namespace

void SearchConfig::validate() const {
    if (!(l_grid_step > 0.0))
        throw InvalidConfig("SearchConfig: l_grid_step must be positive");
    if (!(fixed_window_lo > 0.0) || !(fixed_window_hi > fixed_window_lo))
        throw InvalidConfig(
            "SearchConfig: fixed window must satisfy 0 < lo < hi");
}

double lhs_series(const PipelineSpec& spec, const LeakScenario& scenario,
                  const SeriesConfig& series, double t) {
    spec.validate();
    scenario.validate(spec);
    series.validate();
    if (t < 0.0)
        throw InvalidTime("lhs_series: t must be nonnegative, got " +
                          std::to_string(t));
    const double alpha = alpha_eigenrate(spec);
    double sum = 0.0;
    for (int n = 1; n <= series.n_terms; ++n) {
        const double rate =
            alpha * static_cast<double>(n) * static_cast<double>(n);
        sum += series.c_const *
               std::cos(std::numbers::pi * n * scenario.location_l /
                        spec.length_L) *
               series_kernel(rate, scenario.decay_beta, t,
                             series.degeneracy_tol);
    }
    return sum;
}

double rhs_curve(const PipelineSpec& spec, const FlowBoundary& boundary,
                 const LeakScenario& scenario, double t) {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    if (t < 0.0)
        throw InvalidTime("rhs_curve: t must be nonnegative, got " +
                          std::to_string(t));
    if (!(scenario.coeff_K > 0.0))
        throw NoLeakModel("rhs_curve: leak coefficient K is zero; the decay "
                          "identity has no leak term to match");
    const double front = spec.lin_coeff_2a * spec.length_L /
                         (scenario.coeff_K * spec.gravity_g);
    return front * (1.0 - leak_ramp(scenario.decay_beta, t) / 4.0 -
                    std::exp(-scenario.decay_beta * t));
}

std::vector<double> normalize_curve(const std::vector<double>& curve) {
    double max_abs = 0.0;
    for (double v : curve) max_abs = std::max(max_abs, std::abs(v));
    if (curve.empty() || max_abs == 0.0)
        throw DegenerateCurve(
            "normalize_curve: curve is empty or identically zero");
    std::vector<double> out(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) out[i] = curve[i] / max_abs;
    return out;
}

LocalizationResult localize(const PipelineSpec& spec,
                            const FlowBoundary& boundary,
                            const LeakScenario& nominal,
                            const SeriesConfig& series,
                            const PressureSeries& observed,
                            const SearchConfig& search) {
    spec.validate();
    boundary.validate(spec);
    nominal.validate(spec);
    series.validate();
    search.validate();

    const BetaFit fit = fit_beta(observed, boundary.inlet_pressure_P1,
                                 BetaMethod::LogLinearThroughOrigin);
    if (fit.beta < kMinDecayRate)
        throw NoLeakDetected("localize: fitted decay rate " +
                             std::to_string(fit.beta) +
                             " 1/s is below the detection floor");

    std::vector<double> candidates;
    for (double l = search.l_grid_step; l < spec.length_L;
         l += search.l_grid_step)
        candidates.push_back(l);

    LocalizationResult result;
    result.beta_used = fit.beta;

    double l_hat = spec.length_L / 2.0;
    double lo = search.fixed_window_lo, hi = search.fixed_window_hi;
    const int passes =
        search.window_policy == WindowPolicy::DelayScaled ? 2 : 1;
    std::vector<double> ts;
    for (int pass = 0; pass < passes; ++pass) {
        if (search.window_policy == WindowPolicy::DelayScaled) {
            lo = wave_delay(l_hat, spec.sound_speed_c);
            hi = 2.0 * lo;
        }
        ts = window_samples(lo, hi);
        if (ts.empty())
            throw WindowEmpty(
                "localize: window [" + std::to_string(lo) + ", " +
                std::to_string(hi) +
                "] s contains no whole-second sample times");

        result.objective_curve.clear();
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (double l : candidates) {
            const CandidateScore score = score_candidate(
                spec, boundary, series, nominal.coeff_K, fit.beta, l, ts);
            if (!score.admissible) continue;
            result.objective_curve.emplace_back(l, score.mismatch);
            if (score.mismatch < best) {
                best = score.mismatch;
                l_hat = l;
                found = true;
            }
        }
        if (!found)
            throw WindowEmpty("localize: no candidate has two admissible "
                              "samples inside the window");
    }

    if (search.refine) {
        const double from =
            std::max(kRefineStep, l_hat - search.l_grid_step);
        const double to = std::min(spec.length_L - kRefineStep,
                                   l_hat + search.l_grid_step);
        double best = std::numeric_limits<double>::infinity();
        double best_l = l_hat;
        for (double l = from; l <= to + 0.5 * kRefineStep; l += kRefineStep) {
            const CandidateScore score = score_candidate(
                spec, boundary, series, nominal.coeff_K, fit.beta, l, ts);
            if (score.admissible && score.mismatch < best) {
                best = score.mismatch;
                best_l = l;
            }
        }
        l_hat = best_l;
    }

    result.l_hat = l_hat;
    result.window = {lo, hi};
    result.intersection_time =
        score_candidate(spec, boundary, series, nominal.coeff_K, fit.beta,
                        l_hat, ts)
            .crossing;
    return result;
}

}  // namespace pipeleak
