#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pipeleak/analytic.hpp"
#include "pipeleak/calibration.hpp"
#include "pipeleak/field.hpp"
#include "pipeleak/pipeline.hpp"

namespace pipeleak {

// Everything needed to run one scenario end to end.
struct ScenarioBundle {
    PipelineSpec spec;
    FlowBoundary boundary;
    LeakScenario scenario;
    SeriesConfig series;
    std::string notes;

    void validate() const;
};

// Multiplicative Gaussian measurement noise: p -> p * (1 + sigma_rel * z).
struct NoiseSpec {
    double sigma_rel = 0.0;
    std::uint64_t seed = 0;
};

struct Sampling {
    double t_start = 0.0;
    double t_end = 1500.0;
    double dt = 300.0;

    void validate() const;
};

enum class ForwardSource {
    // Closed-form inlet pressure on the damaged line.
    AnalyticForward,
    // Finite-difference reference run (2001 nodes per line, dt = 0.5 s).
    FdForward,
    // P1 * exp(-beta*t), the idealized decay the fitter assumes.
    PureExponential,
};

// CSV with header "t_s,p_pa".  Reading rejects a wrong header, non-numeric
// fields, nonpositive pressures (ParseError with the line number),
// out-of-order times (OrderError) and data-free input (EmptyInput).
PressureSeries read_series(std::istream& in);
PressureSeries read_series(const std::filesystem::path& path);
void write_series(std::ostream& out, const PressureSeries& series);
void write_series(const std::filesystem::path& path,
                  const PressureSeries& series);

// Samples the inlet pressure of the bundle's scenario at the given cadence
// and applies multiplicative Gaussian noise (one variate per sample, from a
// seeded mt19937_64 via the Box-Muller transform), so a given seed always
// yields the same series.  Throws InvalidSampling for a bad cadence or when
// noise drives a sample nonpositive.
PressureSeries synth_series(const ScenarioBundle& bundle,
                            const Sampling& sampling, ForwardSource source,
                            const NoiseSpec& noise);

struct LoadedConfig {
    ScenarioBundle bundle;
    std::vector<std::string> warnings;  // e.g. unknown keys, one per line
};

// key=value scenario file; '#' or ';' start full-line comments.  Lengths can
// be given in meters or kilometers (key suffix _m or _km, not both).
// Missing required keys, duplicate keys, malformed numbers, and bundle
// invariant violations all raise ConfigError; unknown keys are collected as
// warnings.
LoadedConfig load_config(std::istream& in);
LoadedConfig load_config(const std::filesystem::path& path);

// CSV profile table: x_m plus one column per (segment, time), labeled like
// "intact@300"; cells outside a segment's domain are left empty.
void write_profile_table(std::ostream& out, const ScalarField& field);

struct LabeledCurve {
    std::string name;
    std::vector<double> t;
    std::vector<double> values;
};

// Long-format CSV with header "series_name,t_s,value".
void write_plot_data(std::ostream& out,
                     const std::vector<LabeledCurve>& curves);

}  // namespace pipeleak
