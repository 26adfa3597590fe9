// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Usage: qslkit_acceptance [output-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "qslkit/channels.hpp"
#include "qslkit/csv.hpp"
#include "qslkit/divergences.hpp"
#include "qslkit/qsl.hpp"
#include "qslkit/sampling.hpp"
#include "qslkit/scenario.hpp"
#include "qslkit/verify.hpp"

using namespace qslkit;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Worst value of a gap and the count of samples above the tolerance.
struct Gap {
    double tolerance;
    double worst = 0.0;
    std::size_t violations = 0;
    std::size_t samples = 0;

    void add(double g) {
        ++samples;
        if (std::isnan(g)) g = INFINITY;
        worst = std::max(worst, g);
        if (g > tolerance) ++violations;
    }
    bool ok() const { return violations == 0 && samples > 0; }
    std::string text() const {
        return fmt::format("worst {:.3e} (tol {:.0e}), {} of {} beyond", worst, tolerance, violations, samples);
    }
};

double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const ChannelKind kChannels[] = {ChannelKind::Depolarizing, ChannelKind::PhaseDamping,
                                 ChannelKind::GeneralizedAmplitudeDamping};

Outcome ac1() {
    Rng rng(1001);
    Gap gap{1e-7};
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_density_matrix(2 + i % 3, rng, 1e-3);
        gap.add((matrix_log_integral(rho.matrix()) - matrix_log_spectral(rho.matrix())).max_abs());
    }
    return {gap.ok(), "integral vs spectral log, 100 states d in {2,3,4}: " + gap.text()};
}

Outcome ac2() {
    Gap closed{1e-9};
    const auto grid = oracle::linspace(0.0, 0.95, 15);
    for (double r1 : grid)
        for (double r2 : grid)
            for (double ang : oracle::linspace(0.0, pi, 15)) {
                const Vec3 v1{0.0, 0.0, r1};
                const Vec3 v2{r2 * std::sin(ang), 0.0, r2 * std::cos(ang)};
                closed.add(std::abs(qubit_relative_entropy_closed_form(v1, v2) -
                                    relative_entropy(DensityMatrix::from_bloch_vector(v1),
                                                     DensityMatrix::from_bloch_vector(v2))));
            }
    Gap orbit{1e-10};
    Rng rng(1002);
    for (int i = 0; i < 200; ++i) {
        const auto rho = from_bloch(random_bloch(rng));
        const auto v = random_unitary(2, rng);
        const DensityMatrix moved(v * rho.matrix() * v.adjoint());
        orbit.add(std::abs(relative_entropy(rho, moved) - relative_entropy(moved, rho)));
    }
    return {closed.ok() && orbit.ok(), "closed form on 15^3 grid: " + closed.text() + "; unitary orbit: " + orbit.text()};
}

Outcome ac3() {
    Gap gap{1e-6};
    for (auto kind : kChannels) {
        const Trajectory traj({0.7, 1.0, 0.6}, KrausChannel{kind, 1.0, 0.2});
        const double h = 1e-5;
        for (double t : oracle::linspace(0.05, 5.0, 20)) {
            const double lhs =
                (von_neumann_entropy(traj.evolve_matrix(t + h)) - von_neumann_entropy(traj.evolve_matrix(t - h))) / (2 * h);
            const auto rho = traj.evolve_matrix(t);
            const double rhs = -trace_of_product(matrix_log_spectral(rho.eig()), traj.state_rate(t)).real();
            gap.add(std::abs(lhs - rhs));
        }
    }
    return {gap.ok(), "dS/dt vs -Tr(ln rho drho/dt), 3 channels x 20 times: " + gap.text()};
}

Outcome ac4() {
    Rng rng(1004);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Gap gap{1e-9};
    for (int i = 0; i < 500; ++i) {
        const KrausChannel ch{kChannels[i % 3], 0.2 + 2.0 * unit(rng), unit(rng)};
        const Trajectory traj(random_bloch(rng), ch);
        const double tau = (0.01 + 6.0 * unit(rng)) / ch.gamma;
        const auto rep = evaluate_qsl(traj, tau);
        gap.add(std::max(excess(rep.trace_distance / std::sqrt(2.0), rep.divergence_J),
                         excess(rep.divergence_J, rep.integral_bound_J)));
    }
    return {gap.ok(), "||rho0-rho_tau||_1/sqrt2 <= D_J <= integral bound on 500 scenarios: " + gap.text()};
}

Outcome ac5() {
    Gap validity{1e-9};
    Gap hierarchy{1e-9};
    for (auto mode : {SpeedMode::KrausBound, SpeedMode::Exact}) {
        for (const auto& cfg : {depolarizing_figure_grid(mode), phase_damping_figure_grid(mode)}) {
            for (const auto& cell : run_scenario(cfg).cells) {
                const auto& rep = cell.report;
                validity.add(excess(rep.tau_qsl_J, rep.tau));
                validity.add(excess(rep.tau_qsl_JS, rep.tau));
                hierarchy.add(excess(rep.tau_J_below, rep.tau_qsl_J));
                hierarchy.add(excess(rep.tau_qsl_J, rep.tau_J_above));
            }
        }
    }
    return {validity.ok() && hierarchy.ok(),
            "50x50 depolarizing and phase-damping grids, both speed modes; tau_qsl <= tau: " + validity.text() +
                "; below <= tau_J <= above: " + hierarchy.text()};
}

Outcome ac6() {
    Gap closed{1e-7};
    QslOptions opts;
    opts.speed_mode = SpeedMode::KrausBound;
    for (double r : oracle::linspace(0.02, 0.95, 12))
        for (double theta : {0.0, 1.1})
            for (double gt : oracle::linspace(0.05, 6.0, 12)) {
                const Trajectory traj({r, theta, 0.4}, KrausChannel{ChannelKind::Depolarizing, 1.0, 0.5});
                const auto rep = evaluate_qsl(traj, gt, opts);
                closed.add(rel(closed_form(ClosedForm::DepolarizingJeffreysDistance, traj, gt), rep.divergence_J));
                closed.add(rel(closed_form(ClosedForm::DepolarizingJensenShannonDistance, traj, gt), rep.divergence_JS));
                closed.add(rel(closed_form(ClosedForm::DepolarizingJeffreysRatio, traj, gt), rep.tau_qsl_J / gt));
                closed.add(rel(closed_form(ClosedForm::DepolarizingJensenShannonRatio, traj, gt), rep.tau_qsl_JS / gt));
            }
    Gap asymptote{1e-6};
    for (double r : oracle::linspace(0.02, 0.95, 20)) {
        const Trajectory traj({r, 0.0, 0.0}, KrausChannel{ChannelKind::Depolarizing, 1.0, 0.5});
        const double d = evaluate_qsl(traj, 20.0, opts).divergence_J;
        asymptote.add(std::abs(d * d - 0.25 * r * std::log((1 + r) / (1 - r))));
    }
    return {closed.ok() && asymptote.ok(),
            "closed forms vs kraus-bound pipeline (relative): " + closed.text() + "; D_J^2 at gamma tau 20: " +
                asymptote.text()};
}

Outcome ac7() {
    Gap radius{1e-9}, nu{1e-9}, sums{1e-9};
    for (auto kind : kChannels)
        for (double alpha : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0})
            for (double r : oracle::linspace(0.02, 0.95, 10))
                for (double theta : {0.0, pi / 4, pi / 2, 3 * pi / 4, pi})
                    for (double gt : oracle::linspace(0.0, 6.0, 13)) {
                        if (kind != ChannelKind::GeneralizedAmplitudeDamping && alpha != 0.5) continue;
                        const Trajectory traj({r, theta, 0.8}, KrausChannel{kind, 1.0, alpha});
                        const auto rho = traj.evolve_matrix(gt);
                        radius.add(std::abs(traj.analytic_radius(gt) - norm(bloch_vector(rho.matrix()))));
                        nu.add(std::abs(traj.analytic_nu(gt) -
                                        norm(bloch_vector(mix(traj.initial_state(), rho, 0.5).matrix()))));
                        sums.add(std::abs(traj.kraus_speed_sum(gt) - traj.kraus_speed_sum_numeric(gt)));
                    }
    return {radius.ok() && nu.ok() && sums.ok(),
            "r_t: " + radius.text() + "; nu_t: " + nu.text() + "; Kraus-derivative sums: " + sums.text()};
}

Outcome ac8() {
    const UnitaryDrive drive{{0.3, -0.5, 0.8}};
    Gap zeros{1e-12};
    for (double r : {0.2, 0.6, 0.9})
        for (int k : {1, 2}) zeros.add(tau_qsl_unitary(drive, {r, 1.0, 0.4}, k * pi / drive.strength(), Measure::J));
    Gap parallel{1e-12};
    Rng rng(1008);
    for (int i = 0; i < 20; ++i) {
        const auto q = random_bloch(rng);
        parallel.add(std::abs(tau_qsl_unitary(UnitaryDrive{scaled(q.unit_vector(), 0.5 + i)}, q, 0.7, Measure::J)));
    }
    Gap short_time{1e-2};
    for (double r : {0.1, 0.5, 0.9})
        for (double theta : {0.5, pi / 2}) {
            const BlochQubit q{r, theta, 0.4};
            const double tau = 1e-3 / drive.strength();
            short_time.add(rel(limits::unitary_jeffreys_short_time(drive, q, tau), tau_qsl_unitary(drive, q, tau, Measure::J)));
        }
    Gap floor{0.0};
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const UnitaryDrive d{{g(rng), g(rng), g(rng)}};
        const auto q = random_bloch(rng);
        const double tau = (0.01 + 3.0 * unit(rng)) / d.strength();
        for (auto m : {Measure::J, Measure::JS})
            floor.add(excess(mt_variance_floor(d, q, tau, m), tau_qsl_unitary(d, q, tau, m)));
    }
    return {zeros.ok() && parallel.ok() && short_time.ok() && floor.ok(),
            "zeros at k pi: " + zeros.text() + "; n parallel r: " + parallel.text() + "; quadratic law: " +
                short_time.text() + "; variance floor: " + floor.text()};
}

Outcome ac9() {
    Gap gap{1e-9};
    const auto thetas = oracle::linspace(0.0, pi, 10);
    const auto alphas = oracle::linspace(0.0, 1.0, 10);
    for (auto mode : {SpeedMode::Exact, SpeedMode::KrausBound}) {
        QslOptions opts;
        opts.speed_mode = mode;
        for (double theta : thetas)
            for (double alpha : alphas)
                for (const auto& [r, gt] : {std::pair{0.3, 0.7}, std::pair{0.8, 2.5}}) {
                    const BlochQubit q{r, theta, 0.6};
                    const Trajectory base(q, KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, alpha});
                    const auto a = evaluate_qsl(base, gt, opts);
                    const KrausChannel flipped{ChannelKind::GeneralizedAmplitudeDamping, 1.0, 1.0 - alpha};
                    // pi - theta keeps phi; pi + theta is the antipode of the Bloch vector
                    const Trajectory minus({r, pi - theta, 0.6}, flipped);
                    const Trajectory plus(BlochQubit::from_cartesian(scaled(q.vector(), -1.0)), flipped);
                    for (const auto& other : {evaluate_qsl(minus, gt, opts), evaluate_qsl(plus, gt, opts)}) {
                        gap.add(std::abs(a.tau_qsl_J - other.tau_qsl_J));
                        gap.add(std::abs(a.tau_qsl_JS - other.tau_qsl_JS));
                        gap.add(std::abs(a.delta_J - other.delta_J));
                        gap.add(std::abs(a.delta_JS - other.delta_JS));
                    }
                }
    }
    return {gap.ok(), "10x10 (theta, alpha) grid, both pi - theta and pi + theta, both speed modes: " + gap.text()};
}

// Reads the CSV back and checks orderings column-wise.
Outcome ac10(const std::filesystem::path& out_dir) {
    const double slack = 1e-9;
    std::string detail;
    bool pass = true;

    auto written = [&](const ScenarioConfig& cfg) {
        const auto path = out_dir / cfg.output;
        export_csv(run_scenario(cfg), path);
        return oracle::read_csv(path.string());
    };

    const auto fig1 = written(depolarizing_figure_grid(SpeedMode::KrausBound));
    {
        const auto gt = fig1.values("gamma_tau");
        const auto r = fig1.values("r");
        const auto dn = fig1.values("delta_J_normalized");
        std::size_t checked = 0, bad = 0;
        double worst = 0.0;
        for (std::size_t i = 1; i < dn.size(); ++i) {
            if (gt[i] != gt[i - 1] || !(r[i] > r[i - 1])) continue;
            ++checked;
            const double rise = dn[i] - dn[i - 1];
            worst = std::max(worst, rise);
            if (rise > slack) ++bad;
        }
        pass = pass && bad == 0 && checked == 50 * 49;
        detail += fmt::format("fig1 delta~_J non-increasing in r: {} of {} steps rise, worst rise {:.2e}", bad, checked, worst);
    }

    const auto fig2 = written(phase_damping_figure_grid(SpeedMode::KrausBound));
    for (const char* col : {"tau_qsl_J", "tau_qsl_JS"}) {
        const auto gt = fig2.values("gamma_tau");
        const auto r = fig2.values("r");
        const auto v = fig2.values(col);
        // rows run r fastest; compare each cell with the same r one gamma-tau step earlier
        const std::size_t stride = 50;
        std::size_t checked = 0, bad = 0;
        double worst = 0.0;
        for (std::size_t i = stride; i < v.size(); ++i) {
            if (r[i] != r[i - stride] || !(gt[i] > gt[i - stride])) continue;
            ++checked;
            const double drop = v[i - stride] - v[i];
            worst = std::max(worst, drop);
            if (drop > slack) ++bad;
        }
        pass = pass && bad == 0 && checked == 50 * 49;
        detail += fmt::format("; fig2 {} non-decreasing in gamma tau: {} of {} steps drop, worst {:.2e}", col, bad, checked,
                              worst);
    }
    return {pass, detail};
}

Outcome ac11() {
    Rng rng(1011);
    Gap triangle{1e-10};
    for (int i = 0; i < 1000; ++i) {
        const auto a = from_bloch(random_bloch(rng));
        const auto b = from_bloch(random_bloch(rng));
        const auto c = from_bloch(random_bloch(rng));
        triangle.add(excess(qjsd(a, c), qjsd(a, b) + qjsd(b, c)));
    }
    Gap contract{1e-10};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto kind : kChannels)
        for (int i = 0; i < 300; ++i) {
            const auto ops = kraus_operators({kind, 1.0, unit(rng)}, 4.0 * unit(rng));
            const auto a = from_bloch(random_bloch(rng));
            const auto b = from_bloch(random_bloch(rng));
            contract.add(excess(relative_entropy(DensityMatrix(apply_kraus(ops, a.matrix())),
                                                 DensityMatrix(apply_kraus(ops, b.matrix()))),
                                relative_entropy(a, b)));
        }
    return {triangle.ok() && contract.ok(),
            "QJSD triangle on 1000 triples: " + triangle.text() + "; QRE contractivity 3 x 300 pairs: " + contract.text()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path out_dir = argc > 1 ? argv[1] : "acceptance_out";
    std::filesystem::create_directories(out_dir);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 matrix log oracle equivalence", ac1},
        {"AC2 qubit relative entropy closed form", ac2},
        {"AC3 entropy-rate identity", ac3},
        {"AC4 Jeffreys bound chain", ac4},
        {"AC5 QSL validity and hierarchy", ac5},
        {"AC6 depolarizing closed forms", ac6},
        {"AC7 channel table rows", ac7},
        {"AC8 unitary case", ac8},
        {"AC9 GAD symmetry", ac9},
        {"AC10 figure orderings from CSV", [&] { return ac10(out_dir); }},
        {"AC11 metric properties", ac11},
    };

    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("[{}] {}: {} ({:.1f}s)\n", o.pass ? "PASS" : "FAIL", name, o.detail, secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
