#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nomacell/cell_model.hpp"

namespace nomacell {

/// Default thermal noise, calibrated so that the reference deployment
/// (SE 5 bits/s/Hz, 8 users in a 50 m cell, K = 2.66e-4, eta = 3.57)
/// needs exactly 24 dBm of SIC transmit power. See calibrate_noise.
inline constexpr double kDefaultNoiseDbm = -92.32255929858941;

enum class Placement { Uniform, Rings };
enum class OutputFormat { Csv, Table };

std::string to_string(Placement p);
std::string to_string(OutputFormat f);

struct SimulationConfig {
    std::size_t n_users = 8;
    std::uint64_t seed = 1;
    Placement placement = Placement::Uniform;
};

struct OutputConfig {
    OutputFormat format = OutputFormat::Table;
    std::string path;  // empty: write to stdout
};

/// One reproducible experiment: a cell, how to discretize it, and where
/// the results go. Loadable from a JSON file; every field has a default
/// matching the reference deployment above. The load/in-cell pairs
/// (users_per_cell | density_per_m2, sinr_target_db | se_target) are
/// mutually exclusive in the file; the stored config keeps whichever
/// was given.
struct ScenarioConfig {
    double radius_m = 50.0;
    double min_distance_m = 0.0;
    double pathloss_exponent = 3.57;
    double pathloss_constant = 2.66e-4;
    double noise_dbm = kDefaultNoiseDbm;
    std::optional<double> users_per_cell;  // exactly one of this pair
    std::optional<double> density_per_m2;
    std::optional<double> sinr_target_db;  // exactly one of this pair
    std::optional<double> se_target;

    SimulationConfig simulation;
    OutputConfig output;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Linear-unit cell parameters (dBm -> W, dB/SE -> linear SINR,
    /// users/cell -> density). Calls validate() first.
    CellParams cell_params() const;

    double users_in_cell() const;  // n, whichever way the load was given
    double sinr_linear() const;
};

/// Parse a scenario from a JSON file. Unknown keys and type mismatches
/// are errors (std::invalid_argument with the JSON path); a missing or
/// unreadable file throws std::runtime_error.
ScenarioConfig load_scenario(const std::string& path);

/// The reference deployment: 8 users/cell, SE target 5, defaults above.
ScenarioConfig default_scenario();

}  // namespace nomacell
