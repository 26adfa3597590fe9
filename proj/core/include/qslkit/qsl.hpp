#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qslkit/channels.hpp"
#include "qslkit/quadrature.hpp"

namespace qslkit {

enum class Measure { J, JS };
enum class SpeedMode { Exact, KrausBound };

std::string_view to_string(Measure m) noexcept;
std::string_view to_string(SpeedMode m) noexcept;

/// (|ln(kmin0 kmint)| + kmax0/kmint) / 2
double cost_J_from_spectrum(double kmin0, double kmax0, double kmint);
/// |ln(kmint kmid)| / 2
double cost_JS_from_spectrum(double kmint, double kmid);

/// Throws SingularState when an eigenvalue entering a logarithm is at or below the floor.
double cost_J(const DensityMatrix& rho0, const DensityMatrix& rho_t);
double cost_JS(const DensityMatrix& rho0, const DensityMatrix& rho_t);

struct QslOptions {
    SpeedMode speed_mode = SpeedMode::Exact;
    QuadratureSpec quadrature{};
};

/// Everything computed for one (initial state, drive, tau).
struct QslReport {
    double tau = 0.0;
    double divergence_J = 0.0;   // D_J(rho_0, rho_tau)
    double divergence_JS = 0.0;  // D_JS(rho_0, rho_tau)
    double speed_avg_J = 0.0;    // time average of f_J times the speed
    double speed_avg_JS = 0.0;
    double integral_bound_J = 0.0;  // sqrt of the time integral of f_J times the speed
    double integral_bound_JS = 0.0;
    double trace_distance = 0.0;    // ||rho_0 - rho_tau||_1
    double tau_qsl_J = 0.0;
    double tau_qsl_JS = 0.0;
    double tau_J_below = 0.0;
    double tau_J_above = 0.0;
    double delta_J = 1.0;
    double delta_JS = 1.0;
    double delta_J_normalized = 0.0;
    double delta_JS_normalized = 0.0;
    bool frozen_J = false;   // vanishing speed average; tau_qsl reported as 0
    bool frozen_JS = false;
    bool converged = true;   // quadrature refinement agreement
    SpeedMode speed_mode = SpeedMode::Exact;
};

/// Speed entering the denominators: ||d rho_t/dt||_1 or 2 sum_j ||K_j rho_0 dK_j^dagger/dt||_1.
double speed_for_mode(const Trajectory& traj, double t, SpeedMode mode);

/// Full report. Throws NumericalContract if a QSL time exceeds tau by more than 1e-9.
QslReport evaluate_qsl(const Trajectory& traj, double tau, const QslOptions& opts = {});

/// sqrt(int_0^tau f * ||d rho_t/dt||_1 dt) with the exact speed. Throws QuadratureFailure if the refinement disagrees.
double integral_upper_bound(const Trajectory& traj, double tau, Measure m, const QuadratureSpec& quad = {});

/// tau_qsl for one measure (the corresponding report entry).
double tau_qsl(const Trajectory& traj, double tau, Measure m, const QslOptions& opts = {});

struct TauBounds {
    double below = 0.0;
    double above = 0.0;
};

TauBounds tau_qsl_bounds_J(const Trajectory& traj, double tau, const QslOptions& opts = {});

/// Closed-form QSL time for H = n.sigma acting on a Bloch state.
double tau_qsl_unitary(const UnitaryDrive& drive, const BlochQubit& q, double tau, Measure m,
                       const QuadratureSpec& quad = {});

/// The same QSL with Delta H in place of the commutator norm; never above tau_qsl_unitary.
double mt_variance_floor(const UnitaryDrive& drive, const BlochQubit& q, double tau, Measure m,
                         const QuadratureSpec& quad = {});

/// Printed closed forms for divergences and QSL ratios along the channel trajectories.
enum class ClosedForm {
    DepolarizingJeffreysDistance,
    DepolarizingJeffreysRatio,  // tau_J^QSL / tau, Kraus-bound speed
    DepolarizingJensenShannonDistance,
    DepolarizingJensenShannonRatio,  // tau_JS^QSL / tau, Kraus-bound speed
    PhaseDampingJeffreysDistance,
    PhaseDampingJensenShannonDistance,
    GadJeffreysDistance,
    GadJensenShannonDistance,
};

std::string_view to_string(ClosedForm f) noexcept;

/// Throws ChannelMismatch if the trajectory's drive is not the channel of the formula.
double closed_form(ClosedForm which, const Trajectory& traj, double tau);

/// Limits quoted alongside the closed forms.
namespace limits {
/// D_J^2 for depolarizing as gamma tau -> infinity: (r/4) ln((1+r)/(1-r)).
double depolarizing_jeffreys_squared_long_time(double r);
/// D_J^2 for depolarizing at small gamma tau: (r^2/2)(gamma tau)^2/(1-r^2).
double depolarizing_jeffreys_squared_short_time(double r, double gamma_tau);
/// tau_J^QSL / tau for depolarizing as gamma tau -> infinity.
double depolarizing_jeffreys_ratio_long_time(double r);
/// Unitary tau_J^QSL for ||n|| tau << 1 (quadratic in tau).
double unitary_jeffreys_short_time(const UnitaryDrive& drive, const BlochQubit& q, double tau);
/// Unitary tau_JS^QSL to first order in ||n_hat x r_hat||.
double unitary_jensen_shannon_small_coherence(const UnitaryDrive& drive, const BlochQubit& q, double tau);
}  // namespace limits

/// 1 - tau_qsl / tau. Throws InvalidParameter for tau <= 0.
double relative_error(double tau_qsl, double tau);

struct NormalizedValues {
    std::vector<double> values;
    bool degenerate = false;  // max == min; values are all zero
};

/// (x - min) / (max - min) over the supplied values.
NormalizedValues normalize_over_grid(std::span<const double> values);

}  // namespace qslkit
