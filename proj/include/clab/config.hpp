#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clab/body.hpp"
#include "clab/measure.hpp"
#include "clab/quad.hpp"

namespace clab {

struct ResolutionSpec {
    int N = 32;
    int M = 256;
    int S = 128;
    int points = 41;

    QuadratureSpec quadrature() const { return {M, S}; }
};

/**
 * One run, loaded from a JSON config file. Descriptors use the fixed
 * schemas {"kind": "gaussian"|"quadratic"|"radial"|"evenpower", "params": {...}}
 * for measures and {"kind": "disk"|"ellipse"|"fourier", "params": {...}} for
 * bodies.
 */
struct RunConfig {
    std::string command;                 // power | verify | scan | oracle (suite dispatch)
    std::string mode;                    // scan: b | dim-bm | logc
    MeasureModel measure;
    Body2D body;
    std::optional<Body2D> body2;
    ResolutionSpec resolution;
    double tolerance = 1e-7;
    std::uint64_t seed = 42;
    int samples = 200;
    int degree = 6;
    double t_step = 0.02;
    double t_min = -1.0;
    double t_max = 1.0;
    std::string out;                     // report path; empty = stdout
    std::string curve_out;               // scan curve CSV path
    std::string rho_out;                 // power: CSV of (theta, rho_bar)

    std::string config_hash;             // FNV-1a of the raw config bytes
    std::vector<std::string> flags;      // construction-time banners
};

MeasureModel measure_from_json_text(const std::string& text);
Body2D body_from_json_text(const std::string& text, std::vector<std::string>* flags = nullptr);

RunConfig parse_config(const std::string& json_text, const std::string& origin);
RunConfig load_config(const std::string& path);

/** Applies a "--resolution N=..,M=..,S=.." style override. */
void apply_resolution_override(ResolutionSpec& r, const std::string& text);

} // namespace clab
