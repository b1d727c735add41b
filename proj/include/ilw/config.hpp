#ifndef ILW_CONFIG_HPP
#define ILW_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilw/evolution.hpp"
#include "ilw/symbols.hpp"
#include "ilw/weights.hpp"

namespace ilw {

// Flat-section INI experiment description. Parsing validates every module
// precondition up front and reports the complete list of violations, not
// just the first one.
struct InitialConfig {
    std::string kind = "gaussian";  // gaussian | soliton | file
    double amplitude = 0.5;
    double width = 2.0;
    double center = 0.0;
    double soliton_speed = 1.5;
    std::string path;  // for kind = file
};

struct OutputConfig {
    std::string directory = "runs";
    std::string formats = "csv,bin";
};

struct ExperimentConfig {
    ModelParams model{1.0};
    int grid_n_points = 1024;
    double grid_length = 200.0;
    double dt = 1e-3;
    double t_end = 1.0;
    int checkpoint_stride = 100;
    Integrator integrator = Integrator::integrating_factor_rk4;
    InitialConfig initial;
    VirialParams diagnostics;
    bool functionals_enabled = true;
    bool inequalities_enabled = false;
    OutputConfig output;
    std::uint64_t seed = 1;
    int threads = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

inline bool operator==(const VirialParams& a, const VirialParams& b) {
    return a.b == b.b && a.m == b.m && a.q_exp == b.q_exp && a.sigma == b.sigma &&
           a.lambda == b.lambda && a.alpha == b.alpha && a.c0 == b.c0 && a.c1 == b.c1 &&
           a.corollary_mode == b.corollary_mode;
}

inline bool operator==(const InitialConfig& a, const InitialConfig& b) {
    return a.kind == b.kind && a.amplitude == b.amplitude && a.width == b.width &&
           a.center == b.center && a.soliton_speed == b.soliton_speed && a.path == b.path;
}

inline bool operator==(const OutputConfig& a, const OutputConfig& b) {
    return a.directory == b.directory && a.formats == b.formats;
}

inline bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.delta == b.delta;
}

// Carries every violation found during parsing or validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Parse an INI document (sections [model], [grid], [time], [initial],
// [diagnostics], [output], [run]); unknown keys are violations. Overrides are
// "section.key=value" strings applied after the document, before validation.
ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::string>& overrides = {});

// Canonical emission: parse(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

// 64-bit FNV-1a of the canonical emission, as 16 hex digits; names the run
// directory so identical configs share their outputs.
std::string config_content_hash(const ExperimentConfig& config);

}  // namespace ilw

#endif
