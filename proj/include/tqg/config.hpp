#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqg/dynamics.hpp"

namespace tqg {

/// Static scalar input: zero, a single cosine mode
/// amplitude * cos((2 pi / L)(kx x + ky y) + phase), or a one-field snapshot.
struct FieldSpec {
    enum class Kind { kZero, kSingleMode, kFromFile };
    Kind kind = Kind::kZero;
    int kx = 0, ky = 0;
    double amplitude = 0, phase = 0;
    std::string path;

    bool operator==(const FieldSpec&) const = default;
};

enum class IcKind { kShear, kRandomBandlimited, kFromFile };

/// Everything a run needs, parsed from the line-oriented key = value
/// config format (see emit_config for the canonical layout).
struct SimConfig {
    int n = 0;
    double length = 2.0 * M_PI;
    double t_end = 0;
    std::optional<double> dt;  // nullopt means auto (CFL-driven)
    double cfl_target = 0.5;
    double max_dt = 0.1;
    bool dealias_on = true;
    IcKind ic_kind = IcKind::kShear;
    uint64_t ic_seed = 1;
    double ic_spectrum_slope = -2.0;
    std::string ic_file;
    FieldSpec f_spec;
    FieldSpec h_spec;
    int diag_cadence = 1;
    int snapshot_cadence = 100;
    double norm_ceiling_factor = 1e6;
    std::string output_dir = "out";

    bool operator==(const SimConfig&) const = default;
};

struct ConfigParseResult {
    std::optional<SimConfig> config;        // set iff errors is empty
    std::vector<std::string> errors;        // every violation, not just the first
};

/// Parse the text form; collects all validation errors.
ConfigParseResult parse_config(const std::string& text);

/// Canonical text form; parse_config(emit_config(c)) == c for valid c.
std::string emit_config(const SimConfig& config);

/// Parse a file, throwing std::runtime_error listing every error.
SimConfig load_config_file(const std::string& path);

/// Materialize a FieldSpec on the grid. from_file snapshots must match the
/// grid (n and L).
ScalarField build_field(const FieldSpec& spec, const Grid& grid);

/// Initial (b, q) at t = 0 per the configured kind:
///   shear:               b = sin(k1 y), q = sin(k1 y) cos(k1 x), k1 = 2 pi / L
///   random_bandlimited:  unit-L2 band-limited noise, seeds ic_seed (b) and
///                        ic_seed + 1 (q), modes up to max(2, n/6)
///   from_file:           a two-field snapshot
TqgState initial_state(const SimConfig& config, const Grid& grid);

}  // namespace tqg
