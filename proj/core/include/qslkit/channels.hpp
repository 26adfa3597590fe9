#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "qslkit/states.hpp"

namespace qslkit {

enum class ChannelKind { Depolarizing, PhaseDamping, GeneralizedAmplitudeDamping };

std::string_view to_string(ChannelKind kind) noexcept;

/// Qubit channel whose time dependence enters through lambda_t = 1 - exp(-gamma t).
struct KrausChannel {
    ChannelKind kind = ChannelKind::Depolarizing;
    double gamma = 1.0;
    double alpha = 0.5;  // used by GAD only

    /// Throws InvalidParameter for gamma <= 0 or alpha outside [0,1].
    void validate() const;
    double lambda(double t) const;
    double lambda_rate(double t) const;
};

/// K = sqrt(weight) * shape. Keeping the weight separate lets K rho dK^dagger/dt stay finite
/// at t = 0 where d sqrt(lambda)/dt diverges.
struct KrausOperator {
    double weight = 0.0;
    double weight_rate = 0.0;
    ComplexMatrix shape;
    ComplexMatrix shape_rate;

    ComplexMatrix value() const;
    /// dK/dt. Throws DomainError when weight = 0 but weight_rate != 0.
    ComplexMatrix rate() const;
    /// K rho dK^dagger/dt, finite everywhere.
    ComplexMatrix speed_term(const ComplexMatrix& rho) const;
};

/// Throws InvalidParameter for t < 0 or an invalid channel.
std::vector<KrausOperator> kraus_operators(const KrausChannel& ch, double t);

/// Sum_j K_j rho K_j^dagger.
ComplexMatrix apply_kraus(const std::vector<KrausOperator>& ops, const ComplexMatrix& rho);

/// Sum_j K_j^dagger K_j; the identity for a trace-preserving set.
ComplexMatrix kraus_completeness(const std::vector<KrausOperator>& ops);

/// Time-independent H = n . sigma (hbar = 1).
struct UnitaryDrive {
    Vec3 n{0.0, 0.0, 1.0};

    ComplexMatrix hamiltonian() const;
    double strength() const { return norm(n); }
    /// exp(-i H t)
    ComplexMatrix propagator(double t) const;
};

using Drive = std::variant<KrausChannel, UnitaryDrive>;

enum class SpeedMethod { Analytic, FiniteDifference };

/// A qubit trajectory rho_t from an initial Bloch state under one drive.
class Trajectory {
public:
    /// Throws InvalidBloch / InvalidParameter.
    Trajectory(const BlochQubit& initial, Drive drive);

    const BlochQubit& initial() const noexcept { return initial_; }
    const DensityMatrix& initial_state() const noexcept { return rho0_; }
    const Drive& drive() const noexcept { return drive_; }
    bool is_unitary() const noexcept { return std::holds_alternative<UnitaryDrive>(drive_); }
    /// Rate that sets the time scale: gamma for channels, ||n|| for unitaries.
    double rate_scale() const;

    /// Closed-form Bloch vector r_t (affine channel map or rotation about n).
    Vec3 bloch_vector(double t) const;
    /// d r_t / dt from the same closed form.
    Vec3 bloch_rate(double t) const;

    /// State from the closed-form Bloch vector.
    DensityMatrix evolve(double t) const;
    /// State from the Kraus sum or U rho U^dagger; the reference path.
    DensityMatrix evolve_matrix(double t) const;
    /// Analytic d rho_t / dt.
    ComplexMatrix state_rate(double t) const;

    double analytic_radius(double t) const;
    /// Length of the Bloch vector of (rho_0 + rho_t)/2.
    double analytic_nu(double t) const;

    /// Sum_j ||K_j rho_0 dK_j^dagger/dt||_1 from the closed forms. Throws UnsupportedForDrive for unitaries.
    double kraus_speed_sum(double t) const;
    /// Same sum from the Kraus matrices and singular values.
    double kraus_speed_sum_numeric(double t) const;

    /// ||d rho_t/dt||_1. The finite-difference path uses a central step 1e-5/rate_scale() and needs t >= step.
    double schatten_speed(double t, SpeedMethod method = SpeedMethod::Analytic) const;
    double finite_difference_step() const;

    /// Times in (0, tau), ascending, where r_t or (r_0 + r_t)/2 passes through the origin.
    /// Bloch lengths, and with them the QSL integrands, have kinks there.
    std::vector<double> kink_times(double tau) const;

private:
    void check_time(double t) const;

    BlochQubit initial_;
    Vec3 r0_{};
    DensityMatrix rho0_;
    Drive drive_;
};

/// ||(-i)[H, rho_0]||_1 = 2 r ||n|| ||n_hat x r_hat||.
double unitary_commutator_norm(const UnitaryDrive& drive, const BlochQubit& q);

/// Delta H = sqrt(Tr(rho H^2) - Tr(rho H)^2).
double energy_spread(const UnitaryDrive& drive, const DensityMatrix& rho);

}  // namespace qslkit
