#include "qslkit/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

namespace {

ComplexMatrix diag2(double a, double b) { return ComplexMatrix(2, {a, 0.0, 0.0, b}); }
ComplexMatrix outer2(std::size_t row, std::size_t col) {
    ComplexMatrix m(2);
    m(row, col) = 1.0;
    return m;
}

ComplexMatrix bloch_matrix(const Vec3& v, double identity_part) {
    return ComplexMatrix(2, {identity_part + 0.5 * v[2], Complex(0.5 * v[0], -0.5 * v[1]),
                             Complex(0.5 * v[0], 0.5 * v[1]), identity_part - 0.5 * v[2]});
}

// (1-l) (a + sqrt(a^2 + b/(1-l))) written so that 1-l -> 0 stays finite.
double damped_root_term(double one_minus_lambda, double a, double b) {
    return one_minus_lambda * a + std::sqrt(one_minus_lambda * one_minus_lambda * a * a + one_minus_lambda * b);
}

}  // namespace

std::string_view to_string(ChannelKind kind) noexcept {
    switch (kind) {
        case ChannelKind::Depolarizing: return "depolarizing";
        case ChannelKind::PhaseDamping: return "phase_damping";
        case ChannelKind::GeneralizedAmplitudeDamping: return "gad";
    }
    return "unknown";
}

void KrausChannel::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw Error(Errc::InvalidParameter, fmt::format("decay rate must be positive, got {}", gamma));
    }
    if (kind == ChannelKind::GeneralizedAmplitudeDamping && !(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(Errc::InvalidParameter, fmt::format("alpha = {} outside [0,1]", alpha));
    }
}

double KrausChannel::lambda(double t) const { return -std::expm1(-gamma * t); }
double KrausChannel::lambda_rate(double t) const { return gamma * std::exp(-gamma * t); }

ComplexMatrix KrausOperator::value() const { return shape * Complex(std::sqrt(weight)); }

ComplexMatrix KrausOperator::rate() const {
    if (weight == 0.0) {
        if (weight_rate != 0.0) throw Error(Errc::DomainError, "Kraus derivative diverges at zero weight");
        return ComplexMatrix(shape.dim());
    }
    const double root = std::sqrt(weight);
    return shape * Complex(weight_rate / (2.0 * root)) + shape_rate * Complex(root);
}

ComplexMatrix KrausOperator::speed_term(const ComplexMatrix& rho) const {
    const ComplexMatrix m_rho = shape * rho;
    return m_rho * shape.adjoint() * Complex(0.5 * weight_rate) + m_rho * shape_rate.adjoint() * Complex(weight);
}

std::vector<KrausOperator> kraus_operators(const KrausChannel& ch, double t) {
    ch.validate();
    if (!(t >= 0.0)) throw Error(Errc::InvalidParameter, fmt::format("time must be >= 0, got {}", t));
    const double lam = ch.lambda(t);
    const double dlam = ch.lambda_rate(t);
    const double keep = std::exp(-ch.gamma * t);  // 1 - lambda
    const double root_keep = std::sqrt(keep);
    const ComplexMatrix zero(2);
    // d sqrt(1-lambda)/dt
    const double droot_keep = -dlam / (2.0 * root_keep);

    std::vector<KrausOperator> ops;
    switch (ch.kind) {
        case ChannelKind::Depolarizing:
            ops.push_back({1.0 - 0.75 * lam, -0.75 * dlam, ComplexMatrix::identity(2), zero});
            ops.push_back({0.25 * lam, 0.25 * dlam, pauli_x(), zero});
            ops.push_back({0.25 * lam, 0.25 * dlam, pauli_y(), zero});
            ops.push_back({0.25 * lam, 0.25 * dlam, pauli_z(), zero});
            break;
        case ChannelKind::PhaseDamping:
            ops.push_back({1.0, 0.0, diag2(1.0, root_keep), diag2(0.0, droot_keep)});
            ops.push_back({lam, dlam, outer2(1, 1), zero});
            break;
        case ChannelKind::GeneralizedAmplitudeDamping: {
            const double a = ch.alpha;
            ops.push_back({a, 0.0, diag2(1.0, root_keep), diag2(0.0, droot_keep)});
            ops.push_back({a * lam, a * dlam, outer2(0, 1), zero});
            ops.push_back({1.0 - a, 0.0, diag2(root_keep, 1.0), diag2(droot_keep, 0.0)});
            ops.push_back({(1.0 - a) * lam, (1.0 - a) * dlam, outer2(1, 0), zero});
            break;
        }
    }
    return ops;
}

ComplexMatrix apply_kraus(const std::vector<KrausOperator>& ops, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (const auto& op : ops) {
        if (op.weight == 0.0) continue;
        out += (op.shape * rho * op.shape.adjoint()) * Complex(op.weight);
    }
    return out;
}

ComplexMatrix kraus_completeness(const std::vector<KrausOperator>& ops) {
    ComplexMatrix out(ops.empty() ? 0 : ops.front().shape.dim());
    for (const auto& op : ops) out += (op.shape.adjoint() * op.shape) * Complex(op.weight);
    return out;
}

ComplexMatrix UnitaryDrive::hamiltonian() const {
    return pauli_x() * Complex(n[0]) + pauli_y() * Complex(n[1]) + pauli_z() * Complex(n[2]);
}

ComplexMatrix UnitaryDrive::propagator(double t) const {
    const double s = strength();
    if (s == 0.0) return ComplexMatrix::identity(2);
    const double c = std::cos(s * t);
    const Complex minus_i_sin(0.0, -std::sin(s * t) / s);
    return ComplexMatrix::identity(2) * Complex(c) + hamiltonian() * minus_i_sin;
}

Trajectory::Trajectory(const BlochQubit& initial, Drive drive)
    : initial_(initial), r0_(initial.vector()), rho0_(from_bloch(initial)), drive_(std::move(drive)) {
    if (const auto* ch = std::get_if<KrausChannel>(&drive_)) ch->validate();
}

double Trajectory::rate_scale() const {
    if (const auto* ch = std::get_if<KrausChannel>(&drive_)) return ch->gamma;
    const double s = std::get<UnitaryDrive>(drive_).strength();
    return s > 0.0 ? s : 1.0;
}

void Trajectory::check_time(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::InvalidParameter, fmt::format("time must be >= 0, got {}", t));
}

Vec3 Trajectory::bloch_vector(double t) const {
    check_time(t);
    if (const auto* u = std::get_if<UnitaryDrive>(&drive_)) {
        const double s = u->strength();
        if (s == 0.0) return r0_;
        // Rotation about n_hat by angle 2 ||n|| t.
        const Vec3 k = scaled(u->n, 1.0 / s);
        const double angle = 2.0 * s * t;
        const double c = std::cos(angle);
        const double sn = std::sin(angle);
        const Vec3 kxr = cross(k, r0_);
        const double kr = dot(k, r0_);
        return {r0_[0] * c + kxr[0] * sn + k[0] * kr * (1.0 - c), r0_[1] * c + kxr[1] * sn + k[1] * kr * (1.0 - c),
                r0_[2] * c + kxr[2] * sn + k[2] * kr * (1.0 - c)};
    }
    const auto& ch = std::get<KrausChannel>(drive_);
    const double lam = ch.lambda(t);
    const double keep = std::exp(-ch.gamma * t);
    const double s = std::exp(-0.5 * ch.gamma * t);
    switch (ch.kind) {
        case ChannelKind::Depolarizing: return scaled(r0_, keep);
        case ChannelKind::PhaseDamping: return {s * r0_[0], s * r0_[1], r0_[2]};
        case ChannelKind::GeneralizedAmplitudeDamping:
            return {s * r0_[0], s * r0_[1], keep * r0_[2] + (2.0 * ch.alpha - 1.0) * lam};
    }
    return r0_;
}

Vec3 Trajectory::bloch_rate(double t) const {
    check_time(t);
    if (const auto* u = std::get_if<UnitaryDrive>(&drive_)) return scaled(cross(u->n, bloch_vector(t)), 2.0);
    const auto& ch = std::get<KrausChannel>(drive_);
    const double g = ch.gamma;
    const double keep = std::exp(-g * t);
    const double half = -0.5 * g * std::exp(-0.5 * g * t);
    switch (ch.kind) {
        case ChannelKind::Depolarizing: return scaled(r0_, -g * keep);
        case ChannelKind::PhaseDamping: return {half * r0_[0], half * r0_[1], 0.0};
        case ChannelKind::GeneralizedAmplitudeDamping:
            return {half * r0_[0], half * r0_[1], -g * keep * r0_[2] + (2.0 * ch.alpha - 1.0) * g * keep};
    }
    return {};
}

DensityMatrix Trajectory::evolve(double t) const { return DensityMatrix::from_bloch_vector(bloch_vector(t)); }

DensityMatrix Trajectory::evolve_matrix(double t) const {
    check_time(t);
    if (const auto* u = std::get_if<UnitaryDrive>(&drive_)) {
        const ComplexMatrix ut = u->propagator(t);
        return DensityMatrix(ut * rho0_.matrix() * ut.adjoint());
    }
    return DensityMatrix(apply_kraus(kraus_operators(std::get<KrausChannel>(drive_), t), rho0_.matrix()));
}

ComplexMatrix Trajectory::state_rate(double t) const { return bloch_matrix(bloch_rate(t), 0.0); }

double Trajectory::analytic_radius(double t) const {
    check_time(t);
    const double r = initial_.r;
    const double ct = std::cos(initial_.theta);
    const double st2 = std::sin(initial_.theta) * std::sin(initial_.theta);
    if (is_unitary()) return r;
    const auto& ch = std::get<KrausChannel>(drive_);
    const double lam = ch.lambda(t);
    const double keep = std::exp(-ch.gamma * t);
    switch (ch.kind) {
        case ChannelKind::Depolarizing: return keep * r;
        case ChannelKind::PhaseDamping: return r * std::sqrt(1.0 - lam * st2);
        case ChannelKind::GeneralizedAmplitudeDamping: {
            const double z = (2.0 * ch.alpha - 1.0) * lam + keep * r * ct;
            return std::sqrt(z * z + keep * r * r * st2);
        }
    }
    return r;
}

double Trajectory::analytic_nu(double t) const {
    check_time(t);
    const double r = initial_.r;
    const double ct = std::cos(initial_.theta);
    const double st2 = std::sin(initial_.theta) * std::sin(initial_.theta);
    if (const auto* u = std::get_if<UnitaryDrive>(&drive_)) {
        const double s = u->strength();
        if (s == 0.0 || r == 0.0) return r;
        const double c = norm(cross(scaled(u->n, 1.0 / s), initial_.unit_vector()));
        const double sn = std::sin(s * t);
        return r * std::sqrt(std::max(0.0, 1.0 - c * c * sn * sn));
    }
    const auto& ch = std::get<KrausChannel>(drive_);
    const double lam = ch.lambda(t);
    const double root_keep = std::exp(-0.5 * ch.gamma * t);
    switch (ch.kind) {
        case ChannelKind::Depolarizing: return (1.0 - 0.5 * lam) * r;
        case ChannelKind::PhaseDamping:
            return r * std::sqrt(1.0 - 0.25 * (lam + 2.0 * (1.0 - root_keep)) * st2);
        case ChannelKind::GeneralizedAmplitudeDamping: {
            const double b = 2.0 * ch.alpha - 1.0;
            const double radicand =
                lam * b * (2.0 * (2.0 - lam) * r * ct + lam * b) +
                r * r * ((2.0 - (2.0 - lam) * root_keep) * root_keep * st2 + (2.0 - lam) * (2.0 - lam));
            return 0.5 * std::sqrt(std::max(0.0, radicand));
        }
    }
    return r;
}

double Trajectory::kraus_speed_sum(double t) const {
    check_time(t);
    if (is_unitary()) throw Error(Errc::UnsupportedForDrive, "Kraus speed sum is defined for channels only");
    const auto& ch = std::get<KrausChannel>(drive_);
    const double keep = std::exp(-ch.gamma * t);
    const double g = ch.gamma;
    const double r = initial_.r;
    const double rc = r * std::cos(initial_.theta);
    const double rs2 = r * r * std::sin(initial_.theta) * std::sin(initial_.theta);
    switch (ch.kind) {
        case ChannelKind::Depolarizing: return 0.75 * g * keep;
        case ChannelKind::PhaseDamping: return 0.25 * g * damped_root_term(keep, 1.0 - rc, rs2);
        case ChannelKind::GeneralizedAmplitudeDamping: {
            // c_s alpha: alpha for s = 1, 1 - alpha for s = 2.
            const double first = ch.alpha * damped_root_term(keep, 1.0 - rc, rs2);
            const double second = (1.0 - ch.alpha) * damped_root_term(keep, 1.0 + rc, rs2);
            return 0.25 * g * (first + second);
        }
    }
    return 0.0;
}

double Trajectory::kraus_speed_sum_numeric(double t) const {
    check_time(t);
    if (is_unitary()) throw Error(Errc::UnsupportedForDrive, "Kraus speed sum is defined for channels only");
    double total = 0.0;
    for (const auto& op : kraus_operators(std::get<KrausChannel>(drive_), t)) {
        total += schatten_norm(op.speed_term(rho0_.matrix()), SchattenP::One);
    }
    return total;
}

double Trajectory::finite_difference_step() const { return 1e-5 / rate_scale(); }

double Trajectory::schatten_speed(double t, SpeedMethod method) const {
    if (method == SpeedMethod::Analytic) return norm(bloch_rate(t));
    const double h = finite_difference_step();
    if (t < h) throw Error(Errc::InvalidParameter, fmt::format("finite-difference speed needs t >= {}", h));
    const ComplexMatrix diff = evolve_matrix(t + h).matrix() - evolve_matrix(t - h).matrix();
    return schatten_norm(diff * Complex(1.0 / (2.0 * h)), SchattenP::One);
}

double unitary_commutator_norm(const UnitaryDrive& drive, const BlochQubit& q) {
    q.validate();
    return 2.0 * q.r * norm(cross(drive.n, q.unit_vector()));
}

double energy_spread(const UnitaryDrive& drive, const DensityMatrix& rho) {
    const ComplexMatrix h = drive.hamiltonian();
    const double mean = trace_of_product(rho.matrix(), h).real();
    const double second = trace_of_product(rho.matrix(), h * h).real();
    return std::sqrt(std::max(0.0, second - mean * mean));
}

std::vector<double> Trajectory::kink_times(double tau) const {
    check_time(tau);
    std::vector<double> out;
    constexpr double kOnAxis = 1e-12;
    if (const auto* u = std::get_if<UnitaryDrive>(&drive_)) {
        // r_t = -r_0 needs r_0 orthogonal to n and a half turn.
        const double s = u->strength();
        const double r = norm(r0_);
        if (s == 0.0 || r == 0.0 || std::abs(dot(u->n, r0_)) > kOnAxis * s * r) return out;
        const double period = std::numbers::pi / s;
        for (double t = 0.5 * period; t < tau; t += period) out.push_back(t);
        return out;
    }
    const auto& ch = std::get<KrausChannel>(drive_);
    // Depolarizing and phase damping never shrink a nonzero vector to the origin in finite time.
    if (ch.kind != ChannelKind::GeneralizedAmplitudeDamping) return out;
    if (std::hypot(r0_[0], r0_[1]) > kOnAxis) return out;
    const double z0 = r0_[2];
    const double c = 2.0 * ch.alpha - 1.0;
    if (z0 == c) return out;
    // z_t = (1 - lambda) z0 + lambda c vanishes at lambda = z0/(z0 - c); z0 + z_t at twice that.
    for (double lam : {z0 / (z0 - c), 2.0 * z0 / (z0 - c)}) {
        if (!(lam > 0.0 && lam < 1.0)) continue;
        const double t = -std::log1p(-lam) / ch.gamma;
        if (t > 0.0 && t < tau) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qslkit
