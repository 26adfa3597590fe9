#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qslkit/scenario.hpp"

namespace qslkit {

/// Column names in output order for a grid (axes first, then report fields).
std::vector<std::string> csv_columns(const SweepGrid& grid);

/// '#'-prefixed metadata block, header row, one row per cell. Floats use 12 significant digits.
void write_csv(const SweepGrid& grid, std::ostream& out);

/// Writes to a file, creating parent directories. Throws IoError.
void export_csv(const SweepGrid& grid, const std::filesystem::path& path);

}  // namespace qslkit
