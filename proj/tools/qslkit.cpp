#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qslkit/csv.hpp"
#include "qslkit/error.hpp"
#include "qslkit/formulas.hpp"
#include "qslkit/scenario.hpp"
#include "qslkit/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfig = 2, kContract = 3, kOther = 4 };

int exit_code_for(const qslkit::Error& e) {
    switch (e.code()) {
        case qslkit::Errc::ConfigError: return kConfig;
        case qslkit::Errc::NumericalContract: return kContract;
        default: return kOther;
    }
}

int run_command(const std::string& config_path, const std::string& output, int threads, bool to_stdout) {
    auto cfg = qslkit::load_scenario(config_path);
    if (!output.empty()) cfg.output = output;
    if (threads > 0) cfg.threads = threads;
    cfg.validate();

    const auto grid = qslkit::run_scenario(cfg);
    if (to_stdout) {
        qslkit::write_csv(grid, std::cout);
        return kOk;
    }
    const auto path = qslkit::resolve_output_path(cfg);
    qslkit::export_csv(grid, path);

    std::size_t unconverged = 0;
    for (const auto& cell : grid.cells) unconverged += cell.report.converged ? 0 : 1;
    fmt::print(stderr, "{}: {} cells in {} panel(s) -> {}\n", grid.scenario_name, grid.cells.size(), grid.panel_count,
               path.string());
    if (unconverged > 0) fmt::print(stderr, "warning: {} cell(s) did not meet the quadrature tolerance\n", unconverged);
    return kOk;
}

int verify_command(const std::string& suite, bool json) {
    const auto report = qslkit::run_verify(suite);
    if (json) {
        nlohmann::json out;
        out["suite"] = suite;
        out["passed"] = report.passed();
        out["failed"] = report.failed();
        auto& checks = out["checks"] = nlohmann::json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"suite", c.suite},
                              {"name", c.name},
                              {"worst", c.worst},
                              {"tolerance", c.tolerance},
                              {"samples", c.samples},
                              {"informational", c.informational},
                              {"passed", c.passed()},
                              {"note", c.note}});
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& c : report.checks) {
            const char* tag = c.informational ? "INFO" : (c.passed() ? "ok" : "FAIL");
            fmt::print("{:<4} [{}] {}: worst {:.3e} (tol {:.1e}, n={}){}\n", tag, c.suite, c.name, c.worst, c.tolerance,
                       c.samples, c.note.empty() ? "" : "  " + c.note);
        }
        fmt::print("{} passed, {} failed\n", report.passed(), report.failed());
    }
    return report.ok() ? kOk : kVerifyFailed;
}

int show_formulas_command() {
    std::string_view topic;
    for (const auto& f : qslkit::formula_index()) {
        if (f.topic != topic) {
            topic = f.topic;
            fmt::print("{}\n", topic);
        }
        fmt::print("  {}\n      -> {}\n", f.expression, f.operation);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic quantum speed limits for qubit channels and unitary drives"};
    app.set_version_flag("--version", std::string(QSLKIT_VERSION));
    app.require_subcommand(1);

    std::string config_path, output;
    int threads = 0;
    bool to_stdout = false;
    auto* run = app.add_subcommand("run", "Evaluate a scenario grid and write CSV");
    run->add_option("config", config_path, "YAML scenario file")->required();
    run->add_option("-o,--output", output, "CSV path (overrides the config; relative paths honour QSLKIT_OUTPUT_DIR)");
    run->add_option("-j,--threads", threads, "Worker threads (0 keeps the config value)")->check(CLI::NonNegativeNumber);
    run->add_flag("--stdout", to_stdout, "Write CSV to standard output instead of a file");

    std::string suite = "all";
    bool json = false;
    auto* verify = app.add_subcommand("verify", "Run the self-verification suites");
    verify->add_option("suite", suite, "all, linalg, states, divergences, channels, qsl or cli");
    verify->add_flag("--json", json, "Print a JSON summary");

    auto* formulas = app.add_subcommand("show-formulas", "List implemented formulas and their entry points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (run->parsed()) return run_command(config_path, output, threads, to_stdout);
        if (verify->parsed()) return verify_command(suite, json);
        if (formulas->parsed()) return show_formulas_command();
    } catch (const qslkit::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kOther;
    }
    return kOk;
}
