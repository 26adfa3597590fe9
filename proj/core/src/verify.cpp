#include "qslkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "qslkit/csv.hpp"
#include "qslkit/divergences.hpp"
#include "qslkit/error.hpp"
#include "qslkit/sampling.hpp"

namespace qslkit {

namespace {

using std::numbers::pi;

class Recorder {
public:
    Recorder(VerifyReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}
    ~Recorder() { report_.checks.insert(report_.checks.end(), pending_.begin(), pending_.end()); }

    // deque keeps earlier references valid while later checks are added
    CheckResult& begin(std::string name, double tolerance) {
        pending_.push_back({suite_, std::move(name), 0.0, tolerance, 0, false, {}});
        return pending_.back();
    }

private:
    VerifyReport& report_;
    std::string suite_;
    std::deque<CheckResult> pending_;
};

void observe(CheckResult& c, double gap) {
    ++c.samples;
    if (std::isnan(gap)) gap = std::numeric_limits<double>::infinity();
    c.worst = std::max(c.worst, gap);
}

// Amount by which lhs <= rhs is violated.
double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

const std::vector<ChannelKind> kChannels{ChannelKind::Depolarizing, ChannelKind::PhaseDamping,
                                         ChannelKind::GeneralizedAmplitudeDamping};

KrausChannel random_channel(Rng& rng, ChannelKind kind) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return {kind, 0.2 + 2.0 * unit(rng), unit(rng)};
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

ScenarioConfig figure_grid(DriveKind drive, SpeedMode mode, int resolution, const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.drive = drive;
    cfg.gamma = 1.0;
    cfg.r = linspace(0.02, 0.95, resolution);
    cfg.tau_axis = "gamma_tau";
    cfg.tau_values = linspace(0.0, 6.0, resolution);
    cfg.speed_mode = mode;
    cfg.output = name + ".csv";
    cfg.echo = fmt::format("builtin grid {} ({} x {}, speed_mode {})\n", name, resolution, resolution, to_string(mode));
    return cfg;
}

void linalg_suite(VerifyReport& report) {
    Recorder rec(report, "linalg");
    Rng rng(101);

    auto& recon = rec.begin("eigendecomposition reconstruction (relative)", 1e-10);
    auto& orth = rec.begin("eigenvector orthonormality", 1e-10);
    auto& order = rec.begin("Schatten norm ordering 1 >= 2 >= inf", 1e-12);
    auto& invariance = rec.begin("Schatten norm unitary invariance", 1e-10);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 2 + i % 4;
        const ComplexMatrix a = random_hermitian(d, rng);
        const auto eig = hermitian_eig(a);
        const ComplexMatrix back = spectral_apply(eig, [](double x) { return x; });
        observe(recon, schatten_norm(back - a, SchattenP::Two) / schatten_norm(a, SchattenP::Two));
        const ComplexMatrix vv = eig.eigenvectors.adjoint() * eig.eigenvectors;
        observe(orth, (vv - ComplexMatrix::identity(d)).max_abs());
        const double n1 = schatten_norm(a, SchattenP::One);
        const double n2 = schatten_norm(a, SchattenP::Two);
        const double ni = schatten_norm(a, SchattenP::Inf);
        observe(order, std::max(excess(n2, n1), excess(ni, n2)));
        const ComplexMatrix u = random_unitary(d, rng);
        const ComplexMatrix rotated = u * a * u.adjoint();
        for (auto p : {SchattenP::One, SchattenP::Two, SchattenP::Inf}) {
            observe(invariance, std::abs(schatten_norm(rotated, p) - schatten_norm(a, p)));
        }
    }

    auto& logs = rec.begin("spectral log vs integral log, 100 states d in {2,3,4}", 1e-7);
    auto& sums = rec.begin("density-matrix eigenvalues sum to 1", 1e-10);
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_density_matrix(2 + i % 3, rng, 1e-3);
        observe(logs, (matrix_log_spectral(rho.matrix()) - matrix_log_integral(rho.matrix())).max_abs());
        double s = 0.0;
        for (double p : rho.eigenvalues()) s += p;
        observe(sums, std::abs(s - 1.0));
    }
}

void states_suite(VerifyReport& report) {
    Recorder rec(report, "states");
    auto& trip = rec.begin("Bloch round trip on a 20^3 grid", 1e-10);
    auto& fast = rec.begin("closed-form qubit spectrum vs Jacobi", 1e-12);
    for (double r : linspace(0.0, 0.95, 20))
        for (double th : linspace(0.0, pi, 20))
            for (double ph : linspace(0.0, 2.0 * pi * 19.0 / 20.0, 20)) {
                const auto rho = from_bloch({r, th, ph});
                const auto back = from_bloch(to_bloch(rho).qubit());
                observe(trip, (back.matrix() - rho.matrix()).max_abs());
                const auto jac = hermitian_eig(rho.matrix());
                observe(fast, std::max(std::abs(jac.eigenvalues[0] - rho.eigenvalues()[0]),
                                       std::abs(jac.eigenvalues[1] - rho.eigenvalues()[1])));
            }

    Rng rng(202);
    auto& spectrum = rec.begin("spectrum invariant under unitary conjugation", 1e-10);
    auto& mixing = rec.begin("mixtures stay unit-trace and positive", 1e-12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 2 + i % 3;
        const auto rho = random_density_matrix(d, rng, 1e-4);
        const auto u = random_unitary(d, rng);
        const DensityMatrix moved(u * rho.matrix() * u.adjoint());
        for (std::size_t k = 0; k < d; ++k)
            observe(spectrum, std::abs(moved.eigenvalues()[k] - rho.eigenvalues()[k]));
        const auto m = mix(rho, random_density_matrix(d, rng, 1e-4), unit(rng));
        observe(mixing, std::max(std::abs(m.matrix().trace().real() - 1.0), excess(0.0, m.eigenvalues().front())));
    }
}

void divergences_suite(VerifyReport& report) {
    Recorder rec(report, "divergences");
    Rng rng(303);

    auto& nonneg = rec.begin("divergences nonnegative and vanish only for equal states", 0.0);
    auto& symmetric = rec.begin("Jeffreys and Jensen-Shannon symmetric under swap", 1e-12);
    auto& unitary_inv = rec.begin("QRE unitary invariance", 1e-10);
    auto& pinsker = rec.begin("Pinsker <= QRE <= two-norm bound", 1e-10);
    auto& minmax = rec.begin("S_min <= QRE <= S_max", 1e-9);
    auto& asym = rec.begin("QRE asymmetry within G(u, v)", 1e-10);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 2 + i % 2;
        const auto a = random_density_matrix(d, rng, 1e-3);
        const auto b = random_density_matrix(d, rng, 1e-3);
        const double qre_ab = relative_entropy(a, b);
        const double qre_ba = relative_entropy(b, a);
        const double dist = schatten_norm(a.matrix() - b.matrix(), SchattenP::One);
        for (double v : {qre_ab, jeffreys(a, b), jensen_shannon(a, b)}) {
            const bool bad = v < 0.0 || (v < 1e-9) != (dist < 1e-8);
            observe(nonneg, bad ? 1.0 : 0.0);
        }
        observe(nonneg, relative_entropy(a, a) < 1e-9 ? 0.0 : 1.0);
        observe(symmetric, std::abs(jeffreys(a, b) - jeffreys(b, a)));
        observe(symmetric, std::abs(jensen_shannon(a, b) - jensen_shannon(b, a)));
        const auto u = random_unitary(d, rng);
        const DensityMatrix ua(u * a.matrix() * u.adjoint());
        const DensityMatrix ub(u * b.matrix() * u.adjoint());
        observe(unitary_inv, std::abs(relative_entropy(ua, ub) - qre_ab));
        const auto bounds = qre_bounds(a, b);
        observe(pinsker, std::max(excess(bounds.pinsker_lower, qre_ab), excess(qre_ab, bounds.two_norm_upper)));
        observe(minmax, std::max(excess(bounds.s_min, qre_ab), excess(qre_ab, bounds.s_max)));
        observe(asym, excess(std::abs(qre_ab - qre_ba), asymmetry_bound(a, b)));
    }

    auto& triangle = rec.begin("QJSD triangle inequality, 1000 qubit triples", 1e-10);
    auto& jeffreys_triangle = rec.begin("QJPD triangle inequality search (reported only)", 0.0);
    jeffreys_triangle.informational = true;
    std::size_t jeffreys_violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = from_bloch(random_bloch(rng));
        const auto b = from_bloch(random_bloch(rng));
        const auto c = from_bloch(random_bloch(rng));
        observe(triangle, excess(qjsd(a, c), qjsd(a, b) + qjsd(b, c)));
        const double gap = qjpd(a, c) - qjpd(a, b) - qjpd(b, c);
        observe(jeffreys_triangle, std::max(0.0, gap));
        if (gap > 1e-12) ++jeffreys_violations;
    }
    jeffreys_triangle.note = fmt::format("{} violating triples found", jeffreys_violations);

    auto& contract = rec.begin("QRE contractivity under the three channels", 1e-10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto kind : kChannels)
        for (int i = 0; i < 100; ++i) {
            const auto ch = random_channel(rng, kind);
            const double t = 3.0 * unit(rng) / ch.gamma;
            const auto ops = kraus_operators(ch, t);
            const auto a = from_bloch(random_bloch(rng));
            const auto b = from_bloch(random_bloch(rng));
            const DensityMatrix ea(apply_kraus(ops, a.matrix()));
            const DensityMatrix eb(apply_kraus(ops, b.matrix()));
            observe(contract, excess(relative_entropy(ea, eb), relative_entropy(a, b)));
        }

    auto& closed = rec.begin("closed-form qubit QRE vs matrix QRE on a 15^3 grid", 1e-9);
    for (double r1 : linspace(0.0, 0.95, 15))
        for (double r2 : linspace(0.0, 0.95, 15))
            for (double ang : linspace(0.0, pi, 15)) {
                const Vec3 v1{0.0, 0.0, r1};
                const Vec3 v2{r2 * std::sin(ang), 0.0, r2 * std::cos(ang)};
                observe(closed, std::abs(qubit_relative_entropy_closed_form(v1, v2) -
                                         relative_entropy(DensityMatrix::from_bloch_vector(v1),
                                                          DensityMatrix::from_bloch_vector(v2))));
            }

    auto& rate = rec.begin("entropy-rate identity along the channels", 1e-6);
    for (auto kind : kChannels) {
        const Trajectory traj({0.6, 1.1, 0.4}, KrausChannel{kind, 1.0, 0.3});
        for (double t : linspace(0.05, 4.0, 20)) {
            observe(rate, entropy_rate_identity_check([&](double s) { return traj.evolve_matrix(s); }, t).gap);
        }
    }
}

void channels_suite(VerifyReport& report) {
    Recorder rec(report, "channels");
    auto& complete = rec.begin("Kraus completeness", 1e-10);
    auto& affine = rec.begin("affine Bloch map vs Kraus sum", 1e-10);
    auto& radius = rec.begin("Table I r_t vs Kraus numerics", 1e-9);
    auto& nu = rec.begin("Table I nu_t vs Kraus numerics", 1e-9);
    auto& kraus = rec.begin("Table I Kraus-derivative sums vs Kraus numerics", 1e-9);
    auto& speed_bound = rec.begin("Schatten speed <= 2 x Kraus sum", 1e-9);
    auto& fd = rec.begin("analytic vs finite-difference Schatten speed", 1e-6);
    for (auto kind : kChannels)
        for (double alpha : {0.0, 0.1, 0.5, 1.0})
            for (double r : linspace(0.1, 0.9, 9))
                for (double theta : {0.0, pi / 4, pi / 2})
                    for (double gt : linspace(0.0, 10.0, 21)) {
                        if (kind != ChannelKind::GeneralizedAmplitudeDamping && alpha != 0.5) continue;
                        const Trajectory traj({r, theta, 0.7}, KrausChannel{kind, 1.0, alpha});
                        const auto ops = kraus_operators(std::get<KrausChannel>(traj.drive()), gt);
                        observe(complete, (kraus_completeness(ops) - ComplexMatrix::identity(2)).max_abs());
                        const auto rho = traj.evolve_matrix(gt);
                        observe(affine, (rho.matrix() - traj.evolve(gt).matrix()).max_abs());
                        observe(radius, std::abs(norm(bloch_vector(rho.matrix())) - traj.analytic_radius(gt)));
                        const auto mid = mix(traj.initial_state(), rho, 0.5);
                        observe(nu, std::abs(norm(bloch_vector(mid.matrix())) - traj.analytic_nu(gt)));
                        const double sum = traj.kraus_speed_sum(gt);
                        observe(kraus, std::abs(sum - traj.kraus_speed_sum_numeric(gt)));
                        observe(speed_bound, excess(traj.schatten_speed(gt), 2.0 * sum));
                        if (gt > 0.0) {
                            observe(fd, std::abs(traj.schatten_speed(gt) -
                                                 traj.schatten_speed(gt, SpeedMethod::FiniteDifference)));
                        }
                    }

    auto& fixed = rec.begin("stationary states and unitality", 1e-10);
    for (double r : {0.3, 0.8}) {
        const double theta = 1.0;
        const Trajectory dep({r, theta, 0.2}, KrausChannel{ChannelKind::Depolarizing, 1.0, 0.5});
        observe(fixed, dep.analytic_radius(60.0));
        const Trajectory pd({r, theta, 0.2}, KrausChannel{ChannelKind::PhaseDamping, 1.0, 0.5});
        observe(fixed, std::abs(pd.analytic_radius(80.0) - r * std::abs(std::cos(theta))));
        for (double alpha : {0.0, 0.1, 1.0}) {
            const Trajectory gad({r, theta, 0.2}, KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, alpha});
            observe(fixed, std::abs(gad.analytic_radius(60.0) - std::abs(2 * alpha - 1)));
        }
    }
    const auto mixed = ComplexMatrix::identity(2) * Complex(0.5);
    for (auto kind : {ChannelKind::Depolarizing, ChannelKind::PhaseDamping}) {
        observe(fixed, (apply_kraus(kraus_operators({kind, 1.0, 0.5}, 0.7), mixed) - mixed).max_abs());
    }

    auto& symmetry = rec.begin("GAD divergences invariant under (theta, alpha) -> (pi - theta, 1 - alpha)", 1e-9);
    for (double alpha : {0.0, 0.1, 0.3})
        for (double theta : {0.0, 0.4, pi / 2, 2.0})
            for (double gt : {0.5, 2.0}) {
                const Trajectory a({0.6, theta, 0.3}, KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, alpha});
                const Trajectory b({0.6, pi - theta, 0.3},
                                   KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, 1.0 - alpha});
                const auto ra = a.evolve(gt);
                const auto rb = b.evolve(gt);
                observe(symmetry, std::abs(qjpd(a.initial_state(), ra) - qjpd(b.initial_state(), rb)));
                observe(symmetry, std::abs(qjsd(a.initial_state(), ra) - qjsd(b.initial_state(), rb)));
            }

    auto& unitary = rec.begin("unitary commutator norm vs matrix and <= 2 Delta H", 1e-10);
    Rng rng(404);
    for (int i = 0; i < 200; ++i) {
        const auto q = random_bloch(rng);
        const UnitaryDrive drive{{std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng),
                                  std::normal_distribution<double>()(rng)}};
        const auto rho = from_bloch(q);
        const double closed = unitary_commutator_norm(drive, q);
        const double matrix = schatten_norm(commutator(drive.hamiltonian(), rho.matrix()), SchattenP::One);
        observe(unitary, std::abs(closed - matrix));
        observe(unitary, excess(closed, 2.0 * energy_spread(drive, rho)));
    }
}

void qsl_suite(VerifyReport& report) {
    Recorder rec(report, "qsl");
    auto& validity = rec.begin("tau_qsl <= tau on the figure grids", 1e-9);
    auto& hierarchy = rec.begin("tau_J_below <= tau_qsl_J <= tau_J_above", 1e-9);
    for (auto mode : {SpeedMode::Exact, SpeedMode::KrausBound}) {
        for (const auto& cfg : {depolarizing_figure_grid(mode), phase_damping_figure_grid(mode), gad_figure_grid(mode)}) {
            const auto grid = run_scenario(cfg);
            for (const auto& cell : grid.cells) {
                const auto& rep = cell.report;
                observe(validity, std::max(excess(rep.tau_qsl_J, rep.tau), excess(rep.tau_qsl_JS, rep.tau)));
                observe(hierarchy, std::max(excess(rep.tau_J_below, rep.tau_qsl_J), excess(rep.tau_qsl_J, rep.tau_J_above)));
            }
        }
    }

    auto& closed = rec.begin("closed forms vs matrix/quadrature pipeline (relative)", 1e-7);
    const QslOptions kraus_mode{SpeedMode::KrausBound, {}};
    for (double r : {0.1, 0.5, 0.9})
        for (double theta : {0.3, pi / 2})
            for (double gt : {0.2, 1.0, 4.0}) {
                auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
                const Trajectory dep({r, theta, 0.1}, KrausChannel{ChannelKind::Depolarizing, 1.0, 0.5});
                const auto rep = evaluate_qsl(dep, gt, kraus_mode);
                observe(closed, rel(closed_form(ClosedForm::DepolarizingJeffreysDistance, dep, gt), rep.divergence_J));
                observe(closed, rel(closed_form(ClosedForm::DepolarizingJensenShannonDistance, dep, gt), rep.divergence_JS));
                observe(closed, rel(closed_form(ClosedForm::DepolarizingJeffreysRatio, dep, gt), rep.tau_qsl_J / gt));
                observe(closed, rel(closed_form(ClosedForm::DepolarizingJensenShannonRatio, dep, gt), rep.tau_qsl_JS / gt));
                const Trajectory pd({r, theta, 0.1}, KrausChannel{ChannelKind::PhaseDamping, 1.0, 0.5});
                const auto rho_pd = pd.evolve(gt);
                observe(closed, rel(closed_form(ClosedForm::PhaseDampingJeffreysDistance, pd, gt), qjpd(pd.initial_state(), rho_pd)));
                observe(closed, rel(closed_form(ClosedForm::PhaseDampingJensenShannonDistance, pd, gt), qjsd(pd.initial_state(), rho_pd)));
                for (double alpha : {0.0, 0.1, 1.0}) {
                    const Trajectory gad({r, theta, 0.1}, KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, alpha});
                    const auto rho = gad.evolve(gt);
                    observe(closed, rel(closed_form(ClosedForm::GadJeffreysDistance, gad, gt), qjpd(gad.initial_state(), rho)));
                    observe(closed, rel(closed_form(ClosedForm::GadJensenShannonDistance, gad, gt), qjsd(gad.initial_state(), rho)));
                }
            }

    auto& rates = rec.begin("squared-distance rates within cost-weighted speed", 1e-6);
    auto& trace_rate = rec.begin("d Tr(rho_0 ln rho_t)/dt within condition-weighted speed", 1e-6);
    for (auto kind : kChannels)
        for (double theta : {0.4, pi / 2}) {
            const Trajectory traj({0.7, theta, 0.5}, KrausChannel{kind, 1.0, 0.2});
            const double h = traj.finite_difference_step();
            const auto& rho0 = traj.initial_state();
            for (double t : linspace(0.05, 5.0, 25)) {
                const auto ahead = traj.evolve(t + h);
                const auto behind = traj.evolve(t - h);
                const auto now = traj.evolve(t);
                const double speed = traj.schatten_speed(t);
                const double dj = (jeffreys(rho0, ahead) - jeffreys(rho0, behind)) / (2 * h);
                const double djs = (jensen_shannon(rho0, ahead) - jensen_shannon(rho0, behind)) / (2 * h);
                observe(rates, excess(std::abs(dj), cost_J(rho0, now) * speed));
                observe(rates, excess(std::abs(djs), cost_JS(rho0, now) * speed));
                const double tr_ahead = trace_of_product(rho0.matrix(), matrix_log_spectral(ahead.eig())).real();
                const double tr_behind = trace_of_product(rho0.matrix(), matrix_log_spectral(behind.eig())).real();
                const auto [k0min, k0max] = kappa_min_max(rho0);
                (void)k0min;
                observe(trace_rate, excess(std::abs(tr_ahead - tr_behind) / (2 * h), k0max / kappa_min_max(now).first * speed));
            }
        }

    auto& asymptotes = rec.begin("depolarizing small- and long-time limits", 1e-6);
    for (double r : {0.2, 0.5, 0.8}) {
        const Trajectory dep({r, 0.5, 0.0}, KrausChannel{ChannelKind::Depolarizing, 1.0, 0.5});
        const double d_long = closed_form(ClosedForm::DepolarizingJeffreysDistance, dep, 20.0);
        observe(asymptotes, std::abs(d_long * d_long - limits::depolarizing_jeffreys_squared_long_time(r)));
        const double d_short = qjpd(dep.initial_state(), dep.evolve(1e-3));
        const double expect = limits::depolarizing_jeffreys_squared_short_time(r, 1e-3);
        // 1% relative, rescaled onto the absolute tolerance of this check
        observe(asymptotes, 1e-6 * std::abs(d_short * d_short - expect) / (0.01 * expect));
    }

    auto& chain = rec.begin("trace distance / sqrt 2 <= D_J <= integral bound, 500 scenarios", 1e-9);
    Rng rng(505);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto ch = random_channel(rng, kChannels[i % 3]);
        const Trajectory traj(random_bloch(rng), ch);
        const double tau = (0.05 + 5.0 * unit(rng)) / ch.gamma;
        const auto rep = evaluate_qsl(traj, tau);
        const double dj = rep.divergence_J;
        observe(chain, std::max(excess(rep.trace_distance / std::sqrt(2.0), dj), excess(dj, rep.integral_bound_J)));
    }

    auto& zeros = rec.begin("unitary tau_J vanishes at ||n|| tau = k pi and for n parallel to r", 1e-12);
    for (int k : {1, 2}) {
        const UnitaryDrive drive{{0.3, -0.5, 0.8}};
        observe(zeros, tau_qsl_unitary(drive, {0.6, 1.0, 0.4}, k * pi / drive.strength(), Measure::J));
    }
    {
        const BlochQubit q{0.6, 1.0, 0.4};
        const UnitaryDrive drive{scaled(q.unit_vector(), 1.7)};
        observe(zeros, tau_qsl_unitary(drive, q, 0.8, Measure::J));
    }

    auto& short_time = rec.begin("unitary tau_J quadratic law at ||n|| tau = 1e-3 (relative)", 1e-2);
    for (double r : {0.2, 0.5, 0.8}) {
        const UnitaryDrive drive{{0.3, -0.5, 0.8}};
        const BlochQubit q{r, 1.0, 0.4};
        const double tau = 1e-3 / drive.strength();
        const double exact = tau_qsl_unitary(drive, q, tau, Measure::J);
        observe(short_time, std::abs(exact - limits::unitary_jeffreys_short_time(drive, q, tau)) / exact);
    }

    auto& unitary = rec.begin("unitary closed forms and Mandelstam-Tamm floor", 1e-7);
    for (int i = 0; i < 100; ++i) {
        const auto q = random_bloch(rng, 0.9);
        std::normal_distribution<double> g;
        const UnitaryDrive drive{{g(rng), g(rng), g(rng)}};
        const double tau = 0.1 + 2.0 * std::uniform_real_distribution<double>()(rng);
        const Trajectory traj(q, drive);
        const auto rep = evaluate_qsl(traj, tau);
        const double tj = tau_qsl_unitary(drive, q, tau, Measure::J);
        const double tjs = tau_qsl_unitary(drive, q, tau, Measure::JS);
        observe(unitary, std::abs(tj - rep.tau_qsl_J) / std::max(1.0, tj));
        observe(unitary, std::abs(tjs - rep.tau_qsl_JS) / std::max(1.0, tjs));
        observe(unitary, excess(mt_variance_floor(drive, q, tau, Measure::J), tj));
        observe(unitary, excess(mt_variance_floor(drive, q, tau, Measure::JS), tjs));
    }
}

void cli_suite(VerifyReport& report) {
    Recorder rec(report, "cli");
    auto cfg = depolarizing_figure_grid(SpeedMode::KrausBound, 8);
    auto& determinism = rec.begin("identical configs give identical CSV bytes", 0.0);
    std::ostringstream first, second;
    write_csv(run_scenario(cfg), first);
    cfg.threads = 1;
    write_csv(run_scenario(cfg), second);
    observe(determinism, first.str() == second.str() ? 0.0 : 1.0);

    auto& normalized = rec.begin("normalized deltas span [0, 1] per panel", 1e-12);
    const auto grid = run_scenario(gad_figure_grid(SpeedMode::Exact, 6));
    std::vector<double> lo(grid.panel_count, 1.0), hi(grid.panel_count, 0.0);
    for (const auto& cell : grid.cells) {
        lo[cell.panel] = std::min(lo[cell.panel], cell.report.delta_J_normalized);
        hi[cell.panel] = std::max(hi[cell.panel], cell.report.delta_J_normalized);
    }
    for (std::size_t p = 0; p < grid.panel_count; ++p) {
        if (grid.degenerate_J[p]) continue;
        observe(normalized, std::max(std::abs(lo[p]), std::abs(hi[p] - 1.0)));
    }

    auto& config = rec.begin("empty measure list rejected", 0.0);
    try {
        parse_scenario("drive: {kind: depolarizing, gamma: 1}\nstate: {r: 0.5}\ntau: {gamma_tau: 1}\nmeasures: []\n");
        observe(config, 1.0);
    } catch (const Error& e) {
        observe(config, e.code() == Errc::ConfigError ? 0.0 : 1.0);
    }
}

const std::map<std::string, std::function<void(VerifyReport&)>>& suite_table() {
    static const std::map<std::string, std::function<void(VerifyReport&)>> table{
        {"linalg", linalg_suite},   {"states", states_suite}, {"divergences", divergences_suite},
        {"channels", channels_suite}, {"qsl", qsl_suite},     {"cli", cli_suite},
    };
    return table;
}

}  // namespace

std::size_t VerifyReport::passed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); }));
}

std::size_t VerifyReport::failed() const { return checks.size() - passed(); }

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"linalg", "states", "divergences", "channels", "qsl", "cli"};
    return names;
}

VerifyReport run_verify(const std::string& suite) {
    VerifyReport report;
    if (suite == "all") {
        for (const auto& name : verify_suites()) suite_table().at(name)(report);
        return report;
    }
    const auto it = suite_table().find(suite);
    if (it == suite_table().end()) throw Error(Errc::ConfigError, fmt::format("unknown verify suite '{}'", suite));
    it->second(report);
    return report;
}

ScenarioConfig depolarizing_figure_grid(SpeedMode mode, int resolution) {
    return figure_grid(DriveKind::Depolarizing, mode, resolution, "depolarizing_grid");
}

ScenarioConfig phase_damping_figure_grid(SpeedMode mode, int resolution) {
    auto cfg = figure_grid(DriveKind::PhaseDamping, mode, resolution, "phase_damping_grid");
    cfg.theta = {pi / 2};
    return cfg;
}

ScenarioConfig gad_figure_grid(SpeedMode mode, int resolution) {
    auto cfg = figure_grid(DriveKind::GeneralizedAmplitudeDamping, mode, resolution, "gad_grid");
    cfg.alpha = {0.0, 0.1, 1.0};
    cfg.theta = {0.0, pi / 4, pi / 2};
    return cfg;
}

}  // namespace qslkit
