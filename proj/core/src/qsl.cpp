#include "qslkit/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qslkit/divergences.hpp"
#include "qslkit/error.hpp"

namespace qslkit {

namespace {

constexpr double kFrozenSpeed = 1e-14;
constexpr double kContractSlack = 1e-9;

// ln((1+x)/(1-x))
double log_ratio(double x) { return 2.0 * std::atanh(x); }

void require_log_argument(double kappa, const char* what) {
    if (kappa <= kEigenvalueFloor) {
        throw Error(Errc::SingularState, fmt::format("{} = {:.3e} at or below the eigenvalue floor", what, kappa));
    }
}

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(Errc::InvalidParameter, fmt::format("tau must be >= 0, got {}", tau));
}

double coherence(const UnitaryDrive& drive, const BlochQubit& q) {
    const double s = drive.strength();
    if (s == 0.0) return 0.0;
    return norm(cross(scaled(drive.n, 1.0 / s), q.unit_vector()));
}

// Time average over [0, tau] of |ln((1-r)(1-nu_t)/4)| along a unitary orbit.
double unitary_log_average(const UnitaryDrive& drive, const BlochQubit& q, double tau, const QuadratureSpec& quad) {
    const Trajectory traj(q, drive);
    const double r = q.r;
    auto integrand = [&](double t) {
        const double nu = traj.analytic_nu(t);
        return std::array<double, 1>{std::abs(std::log((1.0 - r) * (1.0 - nu) / 4.0))};
    };
    return simpson_refined<1>(integrand, 0.0, tau, quad).value[0] / tau;
}

double half_h_sum(double r, double r_tau, double nu_tau) {
    const double value = signed_binary_entropy(0.5 * (1.0 - r)) + signed_binary_entropy(0.5 * (1.0 - r_tau)) -
                         2.0 * signed_binary_entropy(0.5 * (1.0 - nu_tau));
    return std::max(0.0, value);
}

const KrausChannel& require_channel(const Trajectory& traj, ChannelKind kind, ClosedForm which) {
    const auto* ch = std::get_if<KrausChannel>(&traj.drive());
    if (ch == nullptr || ch->kind != kind) {
        throw Error(Errc::ChannelMismatch,
                    fmt::format("{} needs a {} trajectory", to_string(which), to_string(kind)));
    }
    return *ch;
}

}  // namespace

std::string_view to_string(Measure m) noexcept { return m == Measure::J ? "J" : "JS"; }
std::string_view to_string(SpeedMode m) noexcept { return m == SpeedMode::Exact ? "exact" : "kraus-bound"; }

std::string_view to_string(ClosedForm f) noexcept {
    switch (f) {
        case ClosedForm::DepolarizingJeffreysDistance: return "depolarizing_jeffreys_distance";
        case ClosedForm::DepolarizingJeffreysRatio: return "depolarizing_jeffreys_ratio";
        case ClosedForm::DepolarizingJensenShannonDistance: return "depolarizing_jensen_shannon_distance";
        case ClosedForm::DepolarizingJensenShannonRatio: return "depolarizing_jensen_shannon_ratio";
        case ClosedForm::PhaseDampingJeffreysDistance: return "phase_damping_jeffreys_distance";
        case ClosedForm::PhaseDampingJensenShannonDistance: return "phase_damping_jensen_shannon_distance";
        case ClosedForm::GadJeffreysDistance: return "gad_jeffreys_distance";
        case ClosedForm::GadJensenShannonDistance: return "gad_jensen_shannon_distance";
    }
    return "unknown";
}

double cost_J_from_spectrum(double kmin0, double kmax0, double kmint) {
    require_log_argument(kmin0, "kappa_min(rho_0)");
    require_log_argument(kmint, "kappa_min(rho_t)");
    return 0.5 * (std::abs(std::log(kmin0 * kmint)) + kmax0 / kmint);
}

double cost_JS_from_spectrum(double kmint, double kmid) {
    require_log_argument(kmint, "kappa_min(rho_t)");
    require_log_argument(kmid, "kappa_min(mixture)");
    return 0.5 * std::abs(std::log(kmint * kmid));
}

double cost_J(const DensityMatrix& rho0, const DensityMatrix& rho_t) {
    const auto [kmin0, kmax0] = kappa_min_max(rho0);
    return cost_J_from_spectrum(kmin0, kmax0, kappa_min_max(rho_t).first);
}

double cost_JS(const DensityMatrix& rho0, const DensityMatrix& rho_t) {
    const DensityMatrix mid = mix(rho0, rho_t, 0.5);
    return cost_JS_from_spectrum(kappa_min_max(rho_t).first, kappa_min_max(mid).first);
}

double speed_for_mode(const Trajectory& traj, double t, SpeedMode mode) {
    if (mode == SpeedMode::Exact) return traj.schatten_speed(t);
    return 2.0 * traj.kraus_speed_sum(t);
}

QslReport evaluate_qsl(const Trajectory& traj, double tau, const QslOptions& opts) {
    check_tau(tau);
    QslReport rep;
    rep.tau = tau;
    rep.speed_mode = opts.speed_mode;

    const DensityMatrix& rho0 = traj.initial_state();
    const DensityMatrix rho_tau = traj.evolve(tau);
    rep.divergence_J = qjpd(rho0, rho_tau);
    rep.divergence_JS = qjsd(rho0, rho_tau);
    const auto diff_eig = hermitian_eig(rho0.matrix() - rho_tau.matrix());
    rep.trace_distance = schatten_norm_from_spectrum(diff_eig.eigenvalues, SchattenP::One);
    const double two_norm = schatten_norm_from_spectrum(diff_eig.eigenvalues, SchattenP::Two);

    if (tau == 0.0) {
        rep.frozen_J = rep.frozen_JS = true;
        return rep;
    }

    const Vec3 r0 = traj.initial().vector();
    const auto [kmin0, kmax0] = kappa_min_max(rho0);
    auto integrand = [&](double t) {
        const Vec3 rt = traj.bloch_vector(t);
        const double kmint = 0.5 * (1.0 - norm(rt));
        const Vec3 mid{0.5 * (r0[0] + rt[0]), 0.5 * (r0[1] + rt[1]), 0.5 * (r0[2] + rt[2])};
        const double kmid = 0.5 * (1.0 - norm(mid));
        const double speed = speed_for_mode(traj, t, opts.speed_mode);
        return std::array<double, 2>{cost_J_from_spectrum(kmin0, kmax0, kmint) * speed,
                                     cost_JS_from_spectrum(kmint, kmid) * speed};
    };
    // Integrate piecewise between kinks; panels are shared out by length.
    std::vector<double> edges{0.0};
    for (double t : traj.kink_times(tau)) edges.push_back(t);
    edges.push_back(tau);
    double integral_J = 0.0;
    double integral_JS = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        QuadratureSpec piece = opts.quadrature;
        if (edges.size() > 2) {
            const double share = (edges[i + 1] - edges[i]) / tau;
            piece.panels = std::max(4, 2 * static_cast<int>(std::ceil(0.5 * opts.quadrature.panels * share)));
        }
        const auto quad = simpson_refined<2>(integrand, edges[i], edges[i + 1], piece);
        rep.converged = rep.converged && quad.converged;
        integral_J += quad.value[0];
        integral_JS += quad.value[1];
    }
    integral_J = std::max(0.0, integral_J);
    integral_JS = std::max(0.0, integral_JS);
    rep.integral_bound_J = std::sqrt(integral_J);
    rep.integral_bound_JS = std::sqrt(integral_JS);
    rep.speed_avg_J = integral_J / tau;
    rep.speed_avg_JS = integral_JS / tau;

    if (rep.speed_avg_J < kFrozenSpeed) {
        rep.frozen_J = true;
    } else {
        const double kmint = kappa_min_max(rho_tau).first;
        rep.tau_qsl_J = rep.divergence_J * rep.divergence_J / rep.speed_avg_J;
        rep.tau_J_below = rep.trace_distance * rep.trace_distance / (2.0 * rep.speed_avg_J);
        rep.tau_J_above = (kmin0 + kmint) * two_norm * two_norm / (2.0 * rep.speed_avg_J * kmin0 * kmint);
    }
    if (rep.speed_avg_JS < kFrozenSpeed) {
        rep.frozen_JS = true;
    } else {
        rep.tau_qsl_JS = rep.divergence_JS * rep.divergence_JS / rep.speed_avg_JS;
    }

    for (const auto& [value, name] : {std::pair{rep.tau_qsl_J, "tau_qsl_J"}, std::pair{rep.tau_qsl_JS, "tau_qsl_JS"}}) {
        if (value > tau + kContractSlack) {
            throw Error(Errc::NumericalContract, fmt::format("{} = {:.12g} exceeds tau = {:.12g}", name, value, tau));
        }
    }
    rep.delta_J = relative_error(rep.tau_qsl_J, tau);
    rep.delta_JS = relative_error(rep.tau_qsl_JS, tau);
    return rep;
}

double integral_upper_bound(const Trajectory& traj, double tau, Measure m, const QuadratureSpec& quad) {
    check_tau(tau);
    if (tau == 0.0) return 0.0;
    QslOptions opts;
    opts.quadrature = quad;
    const QslReport rep = evaluate_qsl(traj, tau, opts);
    if (!rep.converged) {
        throw Error(Errc::QuadratureFailure, fmt::format("Simpson refinement disagrees beyond {:.1e}", quad.relative_tolerance));
    }
    return m == Measure::J ? rep.integral_bound_J : rep.integral_bound_JS;
}

double tau_qsl(const Trajectory& traj, double tau, Measure m, const QslOptions& opts) {
    const QslReport rep = evaluate_qsl(traj, tau, opts);
    return m == Measure::J ? rep.tau_qsl_J : rep.tau_qsl_JS;
}

TauBounds tau_qsl_bounds_J(const Trajectory& traj, double tau, const QslOptions& opts) {
    const QslReport rep = evaluate_qsl(traj, tau, opts);
    return {rep.tau_J_below, rep.tau_J_above};
}

double tau_qsl_unitary(const UnitaryDrive& drive, const BlochQubit& q, double tau, Measure m, const QuadratureSpec& quad) {
    q.validate();
    check_tau(tau);
    const double r = q.r;
    const double s = drive.strength();
    const double c = coherence(drive, q);
    if (r == 0.0 || s == 0.0 || c == 0.0 || tau == 0.0) return 0.0;
    if (m == Measure::J) {
        const double sn = std::sin(s * tau);
        const double denom = s * (2.0 * std::abs(std::log(0.5 * (1.0 - r))) + (1.0 + r) / (1.0 - r));
        return c * log_ratio(r) * sn * sn / denom;
    }
    const double nu_tau = Trajectory(q, drive).analytic_nu(tau);
    const double numer = signed_binary_entropy(0.5 * (1.0 - r)) - signed_binary_entropy(0.5 * (1.0 - nu_tau));
    return std::max(0.0, numer) / (r * s * c * unitary_log_average(drive, q, tau, quad));
}

double mt_variance_floor(const UnitaryDrive& drive, const BlochQubit& q, double tau, Measure m, const QuadratureSpec& quad) {
    q.validate();
    check_tau(tau);
    if (tau == 0.0 || drive.strength() == 0.0) return 0.0;
    const Trajectory traj(q, drive);
    const DensityMatrix& rho0 = traj.initial_state();
    const DensityMatrix rho_tau = traj.evolve(tau);
    const double spread = energy_spread(drive, rho0);
    if (spread == 0.0) return 0.0;
    const auto [kmin0, kmax0] = kappa_min_max(rho0);
    require_log_argument(kmin0, "kappa_min(rho_0)");
    if (m == Measure::J) {
        const double d2 = jeffreys(rho0, rho_tau);
        return d2 / ((2.0 * std::abs(std::log(kmin0)) + kmax0 / kmin0) * spread);
    }
    const double d2 = jensen_shannon(rho0, rho_tau);
    const Vec3 r0 = q.vector();
    auto integrand = [&](double t) {
        const Vec3 rt = traj.bloch_vector(t);
        const double kmid = 0.5 * (1.0 - norm(Vec3{0.5 * (r0[0] + rt[0]), 0.5 * (r0[1] + rt[1]), 0.5 * (r0[2] + rt[2])}));
        require_log_argument(kmid, "kappa_min(mixture)");
        return std::array<double, 1>{std::abs(std::log(kmin0 * kmid))};
    };
    const double avg = simpson_refined<1>(integrand, 0.0, tau, quad).value[0] / tau;
    return d2 / (avg * spread);
}

double closed_form(ClosedForm which, const Trajectory& traj, double tau) {
    check_tau(tau);
    const double r = traj.initial().r;
    const double theta = traj.initial().theta;
    const double r_tau = traj.analytic_radius(tau);
    const double nu_tau = traj.analytic_nu(tau);
    switch (which) {
        case ClosedForm::DepolarizingJeffreysDistance: {
            require_channel(traj, ChannelKind::Depolarizing, which);
            return 0.5 * std::sqrt(std::max(0.0, (r - r_tau) * (log_ratio(r) - log_ratio(r_tau))));
        }
        case ClosedForm::DepolarizingJeffreysRatio: {
            const auto& ch = require_channel(traj, ChannelKind::Depolarizing, which);
            if (tau == 0.0 || r == 0.0) return 0.0;
            const double x = std::exp(-ch.gamma * tau);
            const double numer = (r / 3.0) * (1.0 - x) * (log_ratio(r) - log_ratio(r * x));
            const double denom = (1.0 + x) * std::log1p(-r * x) - (3.0 - x) * std::log1p(-r) +
                                 (1.0 - x) * (2.0 * std::numbers::ln2 + 1.0);
            return numer / denom;
        }
        case ClosedForm::DepolarizingJensenShannonDistance:
            require_channel(traj, ChannelKind::Depolarizing, which);
            return std::sqrt(0.5 * half_h_sum(r, r_tau, nu_tau));
        case ClosedForm::DepolarizingJensenShannonRatio: {
            require_channel(traj, ChannelKind::Depolarizing, which);
            if (tau == 0.0 || r == 0.0) return 0.0;
            const double numer = (2.0 * r / 3.0) * half_h_sum(r, r_tau, nu_tau);
            const double denom = (2.0 + std::numbers::ln2) * (r - r_tau) - (1.0 - r_tau) * std::log((1.0 - r_tau) / 4.0) -
                                 (2.0 - r - r_tau) * std::log(2.0 - r - r_tau) + 3.0 * (1.0 - r) * std::log1p(-r);
            return numer / denom;
        }
        case ClosedForm::PhaseDampingJeffreysDistance: {
            const auto& ch = require_channel(traj, ChannelKind::PhaseDamping, which);
            if (r == 0.0) return 0.0;
            const double root_keep = std::exp(-0.5 * ch.gamma * tau);
            const double bracket = log_ratio(r) - r * root_keep * 2.0 * atanh_over_x(r_tau);
            return 0.5 * std::sin(theta) * std::sqrt(r * (1.0 - root_keep)) * std::sqrt(std::max(0.0, bracket));
        }
        case ClosedForm::PhaseDampingJensenShannonDistance:
            require_channel(traj, ChannelKind::PhaseDamping, which);
            return std::sqrt(0.5 * half_h_sum(r, r_tau, nu_tau));
        case ClosedForm::GadJeffreysDistance: {
            const auto& ch = require_channel(traj, ChannelKind::GeneralizedAmplitudeDamping, which);
            const double lam = ch.lambda(tau);
            const double root_keep = std::exp(-0.5 * ch.gamma * tau);
            const double ct = std::cos(theta);
            const double xi = r * (1.0 - root_keep) * (1.0 + root_keep * ct * ct) - (2.0 * ch.alpha - 1.0) * lam * ct;
            const double total = xi * log_ratio(r) + (r_tau * r_tau + r * (xi - r)) * 2.0 * atanh_over_x(r_tau);
            return 0.5 * std::sqrt(std::max(0.0, total));
        }
        case ClosedForm::GadJensenShannonDistance:
            require_channel(traj, ChannelKind::GeneralizedAmplitudeDamping, which);
            return std::sqrt(0.5 * half_h_sum(r, r_tau, nu_tau));
    }
    throw Error(Errc::InvalidParameter, "unknown closed form");
}

namespace limits {

double depolarizing_jeffreys_squared_long_time(double r) { return 0.25 * r * log_ratio(r); }

double depolarizing_jeffreys_squared_short_time(double r, double gamma_tau) {
    return 0.5 * r * r * gamma_tau * gamma_tau / (1.0 - r * r);
}

double depolarizing_jeffreys_ratio_long_time(double r) {
    return (r / 3.0) * log_ratio(r) / (2.0 * std::numbers::ln2 + 1.0 - 3.0 * std::log1p(-r));
}

double unitary_jeffreys_short_time(const UnitaryDrive& drive, const BlochQubit& q, double tau) {
    const double r = q.r;
    const double denom = 2.0 * std::abs(std::log(0.5 * (1.0 - r))) + (1.0 + r) / (1.0 - r);
    return coherence(drive, q) * drive.strength() * tau * tau * log_ratio(r) / denom;
}

double unitary_jensen_shannon_small_coherence(const UnitaryDrive& drive, const BlochQubit& q, double tau) {
    const double r = q.r;
    const double s = drive.strength();
    const double sn = std::sin(s * tau);
    return coherence(drive, q) * std::log((1.0 - r) / (1.0 + r)) * sn * sn / (8.0 * s * std::log(0.5 * (1.0 - r)));
}

}  // namespace limits

double relative_error(double tau_qsl_value, double tau) {
    if (!(tau > 0.0)) throw Error(Errc::InvalidParameter, fmt::format("relative error needs tau > 0, got {}", tau));
    return 1.0 - tau_qsl_value / tau;
}

NormalizedValues normalize_over_grid(std::span<const double> values) {
    NormalizedValues out;
    out.values.assign(values.size(), 0.0);
    if (values.empty()) {
        out.degenerate = true;
        return out;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = (values[i] - *lo) / range;
    return out;
}

}  // namespace qslkit
