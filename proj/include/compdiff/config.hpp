#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "compdiff/coefficients.hpp"
#include "compdiff/stepper.hpp"

namespace compdiff {

struct TimeSettings {
    double dt = 0.1;
    double t_end = 0.0;
    long record_every = 1;  // steps between energy records
    std::vector<double> snapshot_times;
};

struct OutputSettings {
    std::string dir;  // empty: keep results in memory only
};

// Full description of one simulation run. The coefficient expressions are
// kept both as source text (for serialization) and parsed.
struct SimConfig {
    int n = 33;
    TimeSettings time;
    ModelParams params;
    struct CoeffSources {
        std::string K, r, u0, v0;
    } sources;
    CoefficientSet coefficients;
    OutputSettings output;
    SolverSettings solver;
    // notes for values that had to be chosen rather than taken from a
    // stated source; carried through emit/reload untouched
    std::map<std::string, std::string> provenance;
};

// Reads and validates a JSON config. All invariant violations are collected
// and reported together in one ConfigError.
SimConfig load_config(const std::filesystem::path& path);
SimConfig config_from_json_text(const std::string& text, const std::string& context);
std::string config_to_json_text(const SimConfig& cfg);
void emit_config(const SimConfig& cfg, const std::filesystem::path& path);

// Ready-made configurations of the five reference experiments.
// Variants select the harvesting pair where an experiment sweeps several.
SimConfig preset(const std::string& name, const std::string& variant = "");
std::vector<std::string> preset_names();
std::vector<std::string> preset_variants(const std::string& name);

}  // namespace compdiff
