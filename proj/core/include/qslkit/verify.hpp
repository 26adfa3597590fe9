#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qslkit/scenario.hpp"

namespace qslkit {

struct CheckResult {
    std::string suite;
    std::string name;
    double worst = 0.0;       // largest observed gap or violation
    double tolerance = 0.0;
    std::size_t samples = 0;
    bool informational = false;  // reported, never fails
    std::string note;

    bool passed() const { return informational || worst <= tolerance; }
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }
};

/// Names accepted by run_verify besides "all".
const std::vector<std::string>& verify_suites();

/// Runs one suite or all of them. Throws ConfigError for an unknown suite name.
VerifyReport run_verify(const std::string& suite = "all");

/// Grids mirroring the figure layouts: Gamma tau in [0, 6] x r in [0.02, 0.95], 50 x 50 by default.
ScenarioConfig depolarizing_figure_grid(SpeedMode mode, int resolution = 50);
ScenarioConfig phase_damping_figure_grid(SpeedMode mode, int resolution = 50);
/// alpha in {0, 0.1, 1}, theta in {0, pi/4, pi/2}: nine panels.
ScenarioConfig gad_figure_grid(SpeedMode mode, int resolution = 50);

}  // namespace qslkit
