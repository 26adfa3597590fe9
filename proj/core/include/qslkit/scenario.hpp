#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qslkit/qsl.hpp"

namespace qslkit {

enum class DriveKind { Depolarizing, PhaseDamping, GeneralizedAmplitudeDamping, Unitary };

std::string_view to_string(DriveKind kind) noexcept;

/// Parsed and validated scenario description.
struct ScenarioConfig {
    std::string name = "scenario";
    DriveKind drive = DriveKind::Depolarizing;
    double gamma = 1.0;
    std::vector<double> alpha{0.5};
    Vec3 n{0.0, 0.0, 1.0};

    std::vector<double> r;
    std::vector<double> theta{0.0};
    std::vector<double> phi{0.0};

    /// "gamma_tau" (tau = value / rate scale) or "tau" (absolute).
    std::string tau_axis = "gamma_tau";
    std::vector<double> tau_values;

    bool measure_J = true;
    bool measure_JS = true;
    SpeedMode speed_mode = SpeedMode::Exact;
    QuadratureSpec quadrature{};
    unsigned threads = 0;  // 0: hardware concurrency
    std::filesystem::path output;

    /// Canonical YAML echo of the parsed config; hashed into the CSV metadata.
    std::string echo;

    /// Throws ConfigError on any schema violation.
    void validate() const;
    double rate_scale() const;
    Drive make_drive(double alpha_value) const;
};

/// Throws ConfigError (bad schema) or IoError (unreadable file).
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& yaml_text);

struct Axis {
    std::string name;
    std::vector<double> values;
};

struct GridCell {
    std::size_t panel = 0;
    double alpha = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double tau_coordinate = 0.0;  // value on the tau axis
    double r = 0.0;
    QslReport report;
};

struct SweepGrid {
    std::vector<Axis> axes;  // alpha, theta, phi, tau axis, r (outermost first)
    std::vector<GridCell> cells;
    std::vector<bool> degenerate_J;  // per panel
    std::vector<bool> degenerate_JS;
    std::size_t panel_count = 0;

    std::string scenario_name;
    std::string tool_version;
    std::uint64_t config_hash = 0;
    std::string normalization_scope = "per-panel";
    SpeedMode speed_mode = SpeedMode::Exact;
    bool measure_J = true;
    bool measure_JS = true;
    std::string config_echo;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Evaluates every cell (possibly on several threads) and normalizes deltas per panel.
/// Library errors are rethrown with the cell coordinates prepended.
SweepGrid run_scenario(const ScenarioConfig& cfg);

/// Resolves cfg.output against QSLKIT_OUTPUT_DIR when it is relative and the variable is set.
std::filesystem::path resolve_output_path(const ScenarioConfig& cfg);

}  // namespace qslkit
