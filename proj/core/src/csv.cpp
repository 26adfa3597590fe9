#include "qslkit/csv.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

namespace {

struct Field {
    const char* name;
    double (*get)(const QslReport&);
};

constexpr Field kSharedFields[] = {
    {"tau", [](const QslReport& r) { return r.tau; }},
    {"trace_distance", [](const QslReport& r) { return r.trace_distance; }},
};

constexpr Field kJeffreysFields[] = {
    {"divergence_J", [](const QslReport& r) { return r.divergence_J; }},
    {"speed_avg_J", [](const QslReport& r) { return r.speed_avg_J; }},
    {"integral_bound_J", [](const QslReport& r) { return r.integral_bound_J; }},
    {"tau_qsl_J", [](const QslReport& r) { return r.tau_qsl_J; }},
    {"tau_J_below", [](const QslReport& r) { return r.tau_J_below; }},
    {"tau_J_above", [](const QslReport& r) { return r.tau_J_above; }},
    {"delta_J", [](const QslReport& r) { return r.delta_J; }},
    {"delta_J_normalized", [](const QslReport& r) { return r.delta_J_normalized; }},
    {"frozen_J", [](const QslReport& r) { return r.frozen_J ? 1.0 : 0.0; }},
};

constexpr Field kJensenShannonFields[] = {
    {"divergence_JS", [](const QslReport& r) { return r.divergence_JS; }},
    {"speed_avg_JS", [](const QslReport& r) { return r.speed_avg_JS; }},
    {"integral_bound_JS", [](const QslReport& r) { return r.integral_bound_JS; }},
    {"tau_qsl_JS", [](const QslReport& r) { return r.tau_qsl_JS; }},
    {"delta_JS", [](const QslReport& r) { return r.delta_JS; }},
    {"delta_JS_normalized", [](const QslReport& r) { return r.delta_JS_normalized; }},
    {"frozen_JS", [](const QslReport& r) { return r.frozen_JS ? 1.0 : 0.0; }},
};

std::vector<Field> report_fields(const SweepGrid& grid) {
    std::vector<Field> fields(std::begin(kSharedFields), std::end(kSharedFields));
    if (grid.measure_J) fields.insert(fields.end(), std::begin(kJeffreysFields), std::end(kJeffreysFields));
    if (grid.measure_JS) fields.insert(fields.end(), std::begin(kJensenShannonFields), std::end(kJensenShannonFields));
    fields.push_back({"converged", [](const QslReport& r) { return r.converged ? 1.0 : 0.0; }});
    return fields;
}

double axis_value(const GridCell& cell, const std::string& name) {
    if (name == "alpha") return cell.alpha;
    if (name == "theta") return cell.theta;
    if (name == "phi") return cell.phi;
    if (name == "r") return cell.r;
    return cell.tau_coordinate;
}

// An absolute "tau" axis duplicates the report's tau column.
std::vector<const Axis*> written_axes(const SweepGrid& grid) {
    std::vector<const Axis*> out;
    for (const auto& axis : grid.axes)
        if (axis.name != "tau") out.push_back(&axis);
    return out;
}

std::string degenerate_list(const std::vector<bool>& flags) {
    std::string out;
    for (std::size_t p = 0; p < flags.size(); ++p) {
        if (!flags[p]) continue;
        if (!out.empty()) out += ",";
        out += std::to_string(p);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

std::vector<std::string> csv_columns(const SweepGrid& grid) {
    std::vector<std::string> cols{"panel"};
    for (const auto* axis : written_axes(grid)) cols.push_back(axis->name);
    for (const auto& f : report_fields(grid)) cols.emplace_back(f.name);
    return cols;
}

void write_csv(const SweepGrid& grid, std::ostream& out) {
    out << fmt::format("# qslkit {}\n", grid.tool_version);
    out << fmt::format("# scenario: {}\n", grid.scenario_name);
    out << fmt::format("# config_hash: {:016x}\n", grid.config_hash);
    out << fmt::format("# normalization_scope: {}\n", grid.normalization_scope);
    out << fmt::format("# speed_mode: {}\n", to_string(grid.speed_mode));
    if (grid.measure_J) out << fmt::format("# degenerate_panels_J: {}\n", degenerate_list(grid.degenerate_J));
    if (grid.measure_JS) out << fmt::format("# degenerate_panels_JS: {}\n", degenerate_list(grid.degenerate_JS));
    out << "# config:\n";
    std::istringstream echo(grid.config_echo);
    for (std::string line; std::getline(echo, line);) out << "#   " << line << '\n';

    const auto cols = csv_columns(grid);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';

    const auto fields = report_fields(grid);
    const auto axes = written_axes(grid);
    for (const auto& cell : grid.cells) {
        out << cell.panel;
        for (const auto* axis : axes) out << fmt::format(",{:.12g}", axis_value(cell, axis->name));
        for (const auto& f : fields) out << fmt::format(",{:.12g}", f.get(cell.report));
        out << '\n';
    }
}

void export_csv(const SweepGrid& grid, const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(Errc::IoError, fmt::format("cannot create '{}': {}", path.parent_path().string(), ec.message()));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, fmt::format("cannot open '{}' for writing", path.string()));
    write_csv(grid, out);
    out.flush();
    if (!out) throw Error(Errc::IoError, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace qslkit
