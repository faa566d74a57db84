#include "pipeleak/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "pipeleak/fd.hpp"

namespace pipeleak {

namespace {

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) return "";
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// One standard normal variate per call; the Box-Muller sine partner is
// discarded so each sample consumes exactly two engine draws.
double standard_normal(std::mt19937_64& engine) {
    const double u1 =
        (static_cast<double>(engine() >> 11) + 1.0) * 0x1p-53;
    const double u2 =
        (static_cast<double>(engine() >> 11) + 1.0) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

void ScenarioBundle::validate() const {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    series.validate();
}

void Sampling::validate() const {
    if (t_start < 0.0)
        throw InvalidSampling("Sampling: t_start must be nonnegative");
    if (!(dt > 0.0)) throw InvalidSampling("Sampling: dt must be positive");
    if (!(t_end > t_start))
        throw InvalidSampling("Sampling: t_end must exceed t_start");
}

PressureSeries read_series(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    PressureSeries series;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_seen) {
            if (trim(line) != "t_s,p_pa")
                throw ParseError("read_series: line " +
                                 std::to_string(line_no) +
                                 ": expected header t_s,p_pa");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos ||
            line.find(',', comma + 1) != std::string::npos)
            throw ParseError("read_series: line " + std::to_string(line_no) +
                             ": expected two comma-separated fields");
        const auto t = parse_double(trim(line.substr(0, comma)));
        const auto p = parse_double(trim(line.substr(comma + 1)));
        if (!t || !p)
            throw ParseError("read_series: line " + std::to_string(line_no) +
                             ": non-numeric field");
        if (!(*p > 0.0))
            throw ParseError("read_series: line " + std::to_string(line_no) +
                             ": pressure must be positive");
        if (!series.samples.empty() && !(*t > series.samples.back().t))
            throw OrderError("read_series: line " + std::to_string(line_no) +
                             ": sample times must be strictly increasing");
        series.samples.push_back({*t, *p});
    }
    if (!header_seen || series.samples.empty())
        throw EmptyInput("read_series: no data rows");
    return series;
}

PressureSeries read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_series: cannot open " + path.string());
    return read_series(in);
}

void write_series(std::ostream& out, const PressureSeries& series) {
    series.validate();
    out << "t_s,p_pa\n";
    for (const auto& s : series.samples)
        out << g9(s.t) << ',' << g9(s.p) << '\n';
    if (!out)
        throw IoError("write_series: stream write failed");
}

void write_series(const std::filesystem::path& path,
                  const PressureSeries& series) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_series: cannot open " + path.string());
    write_series(out, series);
    out.flush();
    if (!out)
        throw IoError("write_series: cannot write " + path.string());
}

PressureSeries synth_series(const ScenarioBundle& bundle,
                            const Sampling& sampling, ForwardSource source,
                            const NoiseSpec& noise) {
    bundle.validate();
    sampling.validate();

    std::vector<double> times;
    const double span = sampling.t_end - sampling.t_start;
    const auto count =
        static_cast<std::size_t>(std::floor(span / sampling.dt + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i)
        times.push_back(sampling.t_start +
                        static_cast<double>(i) * sampling.dt);

    PressureSeries series;
    switch (source) {
        case ForwardSource::PureExponential:
            for (double t : times)
                series.samples.push_back(
                    {t, inlet_model(bundle.boundary.inlet_pressure_P1,
                                    bundle.scenario.decay_beta, t)});
            break;
        case ForwardSource::AnalyticForward:
            for (double t : times)
                series.samples.push_back(
                    {t, pressure_at(bundle.spec, bundle.boundary,
                                    bundle.scenario, bundle.series,
                                    SegmentId::UpstreamOfLeak, 0.0, t)});
            break;
        case ForwardSource::FdForward: {
            FdConfig config;
            config.t_end = times.back();
            const ScalarField field = fd_solve(bundle.spec, bundle.boundary,
                                               bundle.scenario, config, times);
            for (std::size_t i = 0; i < times.size(); ++i)
                series.samples.push_back(
                    {times[i],
                     *field.at(SegmentId::UpstreamOfLeak, 0, i)});
            break;
        }
    }

    if (noise.sigma_rel > 0.0) {
        std::mt19937_64 engine(noise.seed);
        for (auto& s : series.samples) {
            s.p *= 1.0 + noise.sigma_rel * standard_normal(engine);
            if (!(s.p > 0.0))
                throw InvalidSampling(
                    "synth_series: noise drove a sample nonpositive; reduce "
                    "sigma_rel");
        }
    }
    return series;
}

namespace {

struct ParsedConfig {
    std::map<std::string, std::pair<double, std::size_t>> numbers;
    std::string notes;
    std::vector<std::string> warnings;
};

const std::set<std::string>& known_numeric_keys() {
    static const std::set<std::string> keys = {
        "pipeline.length_m",        "pipeline.length_km",
        "pipeline.sound_speed_mps", "pipeline.lin_coeff_2a_per_s",
        "pipeline.gravity_mps2",    "pipeline.friction_lambda",
        "pipeline.base_velocity_mps", "pipeline.diameter_m",
        "flow.inlet_pressure_pa",   "flow.g0_pa_s_per_m",
        "flow.gradient_pa_per_m",   "leak.location_m",
        "leak.location_km",         "leak.k",
        "leak.beta_per_s",          "series.n_terms",
        "series.c_const"};
    return keys;
}

double require_key(const ParsedConfig& parsed, const std::string& key) {
    const auto it = parsed.numbers.find(key);
    if (it == parsed.numbers.end())
        throw ConfigError("load_config: missing required key " + key);
    return it->second.first;
}

// Returns the value of `key_m` or 1000xthe value of `key_km`; exactly one of
// the two spellings must be present.
double require_length(const ParsedConfig& parsed, const std::string& key_m,
                      const std::string& key_km) {
    const auto m = parsed.numbers.find(key_m);
    const auto km = parsed.numbers.find(key_km);
    if (m != parsed.numbers.end() && km != parsed.numbers.end())
        throw ConfigError("load_config: " + key_m + " and " + key_km +
                          " are both set; give one");
    if (m != parsed.numbers.end()) return m->second.first;
    if (km != parsed.numbers.end()) return 1000.0 * km->second.first;
    throw ConfigError("load_config: missing required key " + key_m + " (or " +
                      key_km + ")");
}

std::optional<double> optional_key(const ParsedConfig& parsed,
                                   const std::string& key) {
    const auto it = parsed.numbers.find(key);
    if (it == parsed.numbers.end()) return std::nullopt;
    return it->second.first;
}

}  // namespace

LoadedConfig load_config(std::istream& in) {
    ParsedConfig parsed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#' ||
            stripped.front() == ';')
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("load_config: line " + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("load_config: line " + std::to_string(line_no) +
                              ": empty key");
        if (key == "notes") {
            parsed.notes = value;
            continue;
        }
        if (!known_numeric_keys().count(key)) {
            parsed.warnings.push_back("unknown key '" + key +
                                      "' ignored (line " +
                                      std::to_string(line_no) + ")");
            continue;
        }
        const auto v = parse_double(value);
        if (!v)
            throw ConfigError("load_config: line " + std::to_string(line_no) +
                              ": cannot parse number '" + value + "' for " +
                              key);
        if (parsed.numbers.count(key))
            throw ConfigError("load_config: line " + std::to_string(line_no) +
                              ": duplicate key " + key);
        parsed.numbers[key] = {*v, line_no};
    }

    LoadedConfig loaded;
    loaded.warnings = parsed.warnings;
    ScenarioBundle& b = loaded.bundle;
    b.spec.length_L =
        require_length(parsed, "pipeline.length_m", "pipeline.length_km");
    b.spec.sound_speed_c = require_key(parsed, "pipeline.sound_speed_mps");
    b.spec.lin_coeff_2a = require_key(parsed, "pipeline.lin_coeff_2a_per_s");
    if (const auto g = optional_key(parsed, "pipeline.gravity_mps2"))
        b.spec.gravity_g = *g;
    b.spec.friction_lambda = optional_key(parsed, "pipeline.friction_lambda");
    b.spec.base_velocity_v0 =
        optional_key(parsed, "pipeline.base_velocity_mps");
    b.spec.diameter_d = optional_key(parsed, "pipeline.diameter_m");
    b.boundary.inlet_pressure_P1 = require_key(parsed, "flow.inlet_pressure_pa");
    b.boundary.base_mass_flux_G0 = require_key(parsed, "flow.g0_pa_s_per_m");
    b.boundary.steady_gradient_s0 =
        require_key(parsed, "flow.gradient_pa_per_m");
    b.scenario.location_l =
        require_length(parsed, "leak.location_m", "leak.location_km");
    b.scenario.coeff_K = require_key(parsed, "leak.k");
    b.scenario.decay_beta = require_key(parsed, "leak.beta_per_s");
    if (const auto n = optional_key(parsed, "series.n_terms")) {
        if (*n != std::floor(*n))
            throw ConfigError("load_config: series.n_terms must be an integer");
        b.series.n_terms = static_cast<int>(*n);
    }
    if (const auto c = optional_key(parsed, "series.c_const"))
        b.series.c_const = *c;
    b.notes = parsed.notes;

    try {
        b.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("load_config: invalid scenario: ") +
                          e.what());
    }
    return loaded;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("load_config: cannot open " + path.string());
    return load_config(in);
}

void write_profile_table(std::ostream& out, const ScalarField& field) {
    field.validate();
    static const char* seg_names[3] = {"intact", "upstream", "downstream"};
    out << "x_m";
    for (double t : field.t_grid)
        for (const char* seg : seg_names)
            out << ',' << seg << '@' << g9(t);
    out << '\n';
    for (std::size_t ix = 0; ix < field.nx(); ++ix) {
        out << g9(field.x_grid[ix]);
        for (std::size_t it = 0; it < field.nt(); ++it)
            for (int seg = 0; seg < 3; ++seg) {
                const auto& cell =
                    field.at(static_cast<SegmentId>(seg), ix, it);
                out << ',';
                if (cell) out << g9(*cell);
            }
        out << '\n';
    }
    if (!out)
        throw IoError("write_profile_table: stream write failed");
}

void write_plot_data(std::ostream& out,
                     const std::vector<LabeledCurve>& curves) {
    out << "series_name,t_s,value\n";
    for (const auto& curve : curves) {
        if (curve.t.size() != curve.values.size())
            throw GridMismatch(
                "write_plot_data: curve '" + curve.name + "' has " +
                std::to_string(curve.t.size()) + " times but " +
                std::to_string(curve.values.size()) + " values");
        for (std::size_t i = 0; i < curve.t.size(); ++i)
            out << curve.name << ',' << g9(curve.t[i]) << ','
                << g9(curve.values[i]) << '\n';
    }
    if (!out)
        throw IoError("write_plot_data: stream write failed");
}

}  // namespace pipeleak
