#include "qslkit/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "qslkit/error.hpp"

namespace qslkit {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(Errc::ConfigError, msg); }

void reject_unknown_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) config_error(fmt::format("unknown key '{}' in {}", key, where));
    }
}

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& where) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        config_error(fmt::format("{}: wrong type", where));
    }
}

// Plain numbers or multiples of pi such as "pi/2", "3pi/4", "2*pi".
double parse_number(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) config_error(fmt::format("{}: expected a number", where));
    const auto text = node.as<std::string>();
    static const std::regex pi_form(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        const double k = m[1].length() ? std::stod(m[1]) : 1.0;
        const double d = m[2].length() ? std::stod(m[2]) : 1.0;
        if (d == 0.0) config_error(fmt::format("{}: division by zero in '{}'", where, text));
        return k * std::numbers::pi / d;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        config_error(fmt::format("{}: '{}' is not a number", where, text));
    }
}

// Scalar, list, or {from, to, count} range.
std::vector<double> parse_values(const YAML::Node& node, const std::string& where) {
    if (!node || node.IsNull()) config_error(fmt::format("{}: missing value", where));
    std::vector<double> out;
    if (node.IsScalar()) {
        out.push_back(parse_number(node, where));
    } else if (node.IsSequence()) {
        for (std::size_t i = 0; i < node.size(); ++i) out.push_back(parse_number(node[i], fmt::format("{}[{}]", where, i)));
    } else if (node.IsMap()) {
        reject_unknown_keys(node, {"from", "to", "count"}, where);
        if (!node["from"] || !node["to"] || !node["count"]) config_error(fmt::format("{}: range needs from, to, count", where));
        const double from = parse_number(node["from"], where + ".from");
        const double to = parse_number(node["to"], where + ".to");
        const int count = scalar_as<int>(node["count"], where + ".count");
        if (count < 1) config_error(fmt::format("{}: count must be >= 1", where));
        if (count == 1) return {from};
        for (int i = 0; i < count; ++i) out.push_back(from + (to - from) * i / (count - 1));
    }
    if (out.empty()) config_error(fmt::format("{}: empty value list", where));
    return out;
}

DriveKind parse_drive_kind(const std::string& s) {
    if (s == "depolarizing") return DriveKind::Depolarizing;
    if (s == "phase_damping") return DriveKind::PhaseDamping;
    if (s == "gad" || s == "generalized_amplitude_damping") return DriveKind::GeneralizedAmplitudeDamping;
    if (s == "unitary") return DriveKind::Unitary;
    config_error(fmt::format("unknown drive kind '{}'", s));
}

ChannelKind channel_kind(DriveKind k) {
    switch (k) {
        case DriveKind::Depolarizing: return ChannelKind::Depolarizing;
        case DriveKind::PhaseDamping: return ChannelKind::PhaseDamping;
        default: return ChannelKind::GeneralizedAmplitudeDamping;
    }
}

}  // namespace

std::string_view to_string(DriveKind kind) noexcept {
    switch (kind) {
        case DriveKind::Depolarizing: return "depolarizing";
        case DriveKind::PhaseDamping: return "phase_damping";
        case DriveKind::GeneralizedAmplitudeDamping: return "gad";
        case DriveKind::Unitary: return "unitary";
    }
    return "unknown";
}

double ScenarioConfig::rate_scale() const {
    if (drive == DriveKind::Unitary) {
        const double s = norm(n);
        return s > 0.0 ? s : 1.0;
    }
    return gamma;
}

Drive ScenarioConfig::make_drive(double alpha_value) const {
    if (drive == DriveKind::Unitary) return UnitaryDrive{n};
    return KrausChannel{channel_kind(drive), gamma, alpha_value};
}

void ScenarioConfig::validate() const {
    if (drive != DriveKind::Unitary && !(gamma > 0.0)) config_error(fmt::format("drive.gamma must be > 0, got {}", gamma));
    for (double a : alpha)
        if (!(a >= 0.0 && a <= 1.0)) config_error(fmt::format("drive.alpha {} outside [0,1]", a));
    if (r.empty()) config_error("state.r is empty");
    for (double x : r)
        if (!(x >= 0.0 && x < 1.0)) config_error(fmt::format("state.r {} outside [0,1)", x));
    for (double x : theta)
        if (!(x >= 0.0 && x <= std::numbers::pi)) config_error(fmt::format("state.theta {} outside [0,pi]", x));
    for (double x : phi)
        if (!(x >= 0.0 && x < 2.0 * std::numbers::pi)) config_error(fmt::format("state.phi {} outside [0,2pi)", x));
    if (tau_values.empty()) config_error("tau axis is empty");
    for (double x : tau_values)
        if (!(x >= 0.0)) config_error(fmt::format("{} value {} is negative", tau_axis, x));
    if (!measure_J && !measure_JS) config_error("measures must name at least one of J, JS");
    if (quadrature.panels < 4 || quadrature.panels % 2 != 0)
        config_error(fmt::format("quadrature.panels must be even and >= 4, got {}", quadrature.panels));
    if (quadrature.max_panels < quadrature.panels)
        config_error(fmt::format("quadrature.max_panels {} is below panels {}", quadrature.max_panels, quadrature.panels));
    if (!(quadrature.relative_tolerance > 0.0)) config_error("quadrature.relative_tolerance must be > 0");
    if (drive == DriveKind::Unitary && speed_mode == SpeedMode::KrausBound)
        config_error("speed_mode kraus-bound needs a channel drive");
}

ScenarioConfig parse_scenario(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        config_error(fmt::format("YAML syntax: {}", e.what()));
    }
    if (!root.IsMap()) config_error("top level must be a mapping");
    reject_unknown_keys(root, {"name", "drive", "state", "tau", "measures", "speed_mode", "quadrature", "threads", "output"},
                        "top level");

    ScenarioConfig cfg;
    if (root["name"]) cfg.name = scalar_as<std::string>(root["name"], "name");

    const auto drive = root["drive"];
    if (!drive || !drive.IsMap()) config_error("missing 'drive' section");
    reject_unknown_keys(drive, {"kind", "gamma", "alpha", "n"}, "drive");
    if (!drive["kind"]) config_error("drive.kind is required");
    cfg.drive = parse_drive_kind(scalar_as<std::string>(drive["kind"], "drive.kind"));
    if (cfg.drive == DriveKind::Unitary) {
        if (drive["gamma"] || drive["alpha"]) config_error("unitary drives take 'n', not gamma/alpha");
        const auto nv = parse_values(drive["n"], "drive.n");
        if (nv.size() != 3) config_error("drive.n must have three components");
        cfg.n = {nv[0], nv[1], nv[2]};
    } else {
        if (drive["n"]) config_error("'n' applies to unitary drives only");
        if (!drive["gamma"]) config_error("drive.gamma is required for channels");
        cfg.gamma = parse_number(drive["gamma"], "drive.gamma");
        if (drive["alpha"]) {
            if (cfg.drive != DriveKind::GeneralizedAmplitudeDamping) config_error("drive.alpha applies to gad only");
            cfg.alpha = parse_values(drive["alpha"], "drive.alpha");
        } else if (cfg.drive == DriveKind::GeneralizedAmplitudeDamping) {
            config_error("drive.alpha is required for gad");
        }
    }

    const auto state = root["state"];
    if (!state || !state.IsMap()) config_error("missing 'state' section");
    reject_unknown_keys(state, {"r", "theta", "phi"}, "state");
    cfg.r = parse_values(state["r"], "state.r");
    if (state["theta"]) cfg.theta = parse_values(state["theta"], "state.theta");
    if (state["phi"]) cfg.phi = parse_values(state["phi"], "state.phi");

    const auto tau = root["tau"];
    if (!tau || !tau.IsMap() || tau.size() != 1) config_error("'tau' must hold exactly one of tau, gamma_tau, n_tau");
    const auto axis = tau.begin()->first.as<std::string>();
    const std::string scaled_axis = cfg.drive == DriveKind::Unitary ? "n_tau" : "gamma_tau";
    if (axis != "tau" && axis != scaled_axis)
        config_error(fmt::format("tau axis '{}' not valid here; use tau or {}", axis, scaled_axis));
    cfg.tau_axis = axis;
    cfg.tau_values = parse_values(tau.begin()->second, "tau." + axis);

    if (root["measures"]) {
        const auto m = root["measures"];
        if (!m.IsSequence()) config_error("measures must be a list");
        cfg.measure_J = cfg.measure_JS = false;
        for (const auto& item : m) {
            const auto s = scalar_as<std::string>(item, "measures");
            if (s == "J") cfg.measure_J = true;
            else if (s == "JS") cfg.measure_JS = true;
            else config_error(fmt::format("unknown measure '{}'", s));
        }
    }
    if (root["speed_mode"]) {
        const auto s = scalar_as<std::string>(root["speed_mode"], "speed_mode");
        if (s == "exact") cfg.speed_mode = SpeedMode::Exact;
        else if (s == "kraus-bound") cfg.speed_mode = SpeedMode::KrausBound;
        else config_error(fmt::format("unknown speed_mode '{}'", s));
    }
    if (const auto q = root["quadrature"]) {
        reject_unknown_keys(q, {"panels", "relative_tolerance", "max_panels"}, "quadrature");
        if (q["panels"]) cfg.quadrature.panels = scalar_as<int>(q["panels"], "quadrature.panels");
        if (q["max_panels"]) cfg.quadrature.max_panels = scalar_as<int>(q["max_panels"], "quadrature.max_panels");
        if (q["relative_tolerance"])
            cfg.quadrature.relative_tolerance = parse_number(q["relative_tolerance"], "quadrature.relative_tolerance");
    }
    if (root["threads"]) cfg.threads = scalar_as<unsigned>(root["threads"], "threads");
    cfg.output = root["output"] ? scalar_as<std::string>(root["output"], "output") : cfg.name + ".csv";

    cfg.echo = YAML::Dump(root);
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, fmt::format("cannot read config '{}'", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::filesystem::path resolve_output_path(const ScenarioConfig& cfg) {
    if (cfg.output.is_absolute()) return cfg.output;
    if (const char* dir = std::getenv("QSLKIT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / cfg.output;
    }
    return cfg.output;
}

SweepGrid run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const bool gad = cfg.drive == DriveKind::GeneralizedAmplitudeDamping;

    SweepGrid grid;
    grid.scenario_name = cfg.name;
    grid.tool_version = QSLKIT_VERSION;
    grid.config_echo = cfg.echo;
    grid.config_hash = fnv1a(cfg.echo);
    grid.speed_mode = cfg.speed_mode;
    grid.measure_J = cfg.measure_J;
    grid.measure_JS = cfg.measure_JS;
    if (gad) grid.axes.push_back({"alpha", cfg.alpha});
    grid.axes.push_back({"theta", cfg.theta});
    grid.axes.push_back({"phi", cfg.phi});
    grid.axes.push_back({cfg.tau_axis, cfg.tau_values});
    grid.axes.push_back({"r", cfg.r});

    const std::vector<double> alphas = gad ? cfg.alpha : std::vector<double>{cfg.alpha.front()};
    for (double a : alphas)
        for (double th : cfg.theta)
            for (double ph : cfg.phi) {
                for (double tv : cfg.tau_values)
                    for (double r : cfg.r) {
                        GridCell cell;
                        cell.panel = grid.panel_count;
                        cell.alpha = a;
                        cell.theta = th;
                        cell.phi = ph;
                        cell.tau_coordinate = tv;
                        cell.r = r;
                        grid.cells.push_back(cell);
                    }
                ++grid.panel_count;
            }

    const double tau_scale = cfg.tau_axis == "tau" ? 1.0 : 1.0 / cfg.rate_scale();
    QslOptions opts;
    opts.speed_mode = cfg.speed_mode;
    opts.quadrature = cfg.quadrature;

    auto evaluate_cell = [&](GridCell& cell) {
        try {
            const Trajectory traj({cell.r, cell.theta, cell.phi}, cfg.make_drive(cell.alpha));
            cell.report = evaluate_qsl(traj, cell.tau_coordinate * tau_scale, opts);
        } catch (const Error& e) {
            std::string where = gad ? fmt::format("alpha={:.12g}, ", cell.alpha) : std::string();
            where += fmt::format("theta={:.12g}, phi={:.12g}, {}={:.12g}, r={:.12g}", cell.theta, cell.phi, cfg.tau_axis,
                                 cell.tau_coordinate, cell.r);
            throw Error(e.code(), fmt::format("cell ({}): {}", where, e.what()));
        }
    };

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.cells.size()));
    if (workers <= 1) {
        for (auto& cell : grid.cells) evaluate_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex failure_mutex;
        std::size_t failure_index = grid.cells.size();
        std::exception_ptr failure;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < grid.cells.size(); i = next++) {
                    try {
                        evaluate_cell(grid.cells[i]);
                    } catch (...) {
                        // Keep the first failing cell in grid order so the report does not depend on scheduling.
                        std::lock_guard lock(failure_mutex);
                        if (i < failure_index) {
                            failure_index = i;
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    const std::size_t per_panel = cfg.tau_values.size() * cfg.r.size();
    grid.degenerate_J.assign(grid.panel_count, false);
    grid.degenerate_JS.assign(grid.panel_count, false);
    std::vector<double> dj(per_panel), djs(per_panel);
    for (std::size_t p = 0; p < grid.panel_count; ++p) {
        for (std::size_t k = 0; k < per_panel; ++k) {
            dj[k] = grid.cells[p * per_panel + k].report.delta_J;
            djs[k] = grid.cells[p * per_panel + k].report.delta_JS;
        }
        const auto nj = normalize_over_grid(dj);
        const auto njs = normalize_over_grid(djs);
        grid.degenerate_J[p] = nj.degenerate;
        grid.degenerate_JS[p] = njs.degenerate;
        for (std::size_t k = 0; k < per_panel; ++k) {
            grid.cells[p * per_panel + k].report.delta_J_normalized = nj.values[k];
            grid.cells[p * per_panel + k].report.delta_JS_normalized = njs.values[k];
        }
    }
    return grid;
}

}  // namespace qslkit
