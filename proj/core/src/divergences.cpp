#include "qslkit/divergences.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

namespace {

constexpr double kNegativeSlack = 1e-10;
constexpr double kSmaxTol = 1e-10;

void require_full_rank(const DensityMatrix& rho, const char* name) {
    const double kmin = rho.eigenvalues().front();
    if (kmin <= kEigenvalueFloor) {
        throw Error(Errc::SingularState, fmt::format("{} has eigenvalue {:.3e} at or below floor", name, kmin));
    }
}

double sum_plogp(const RealVector& p) {
    double s = 0.0;
    for (double x : p)
        if (x > 0.0) s += x * std::log(x);
    return s;
}

// g(p, q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)) with 0 ln 0 = 0.
double binary_kl(double p, double q) {
    auto term = [](double a, double b) {
        if (a == 0.0) return 0.0;
        return a * std::log(a / b);
    };
    return term(p, q) + term(1.0 - p, 1.0 - q);
}

}  // namespace

std::string_view to_string(DivergenceKind kind) noexcept {
    switch (kind) {
        case DivergenceKind::QRE: return "QRE";
        case DivergenceKind::Jeffreys: return "Jeffreys";
        case DivergenceKind::QJPD: return "QJPD";
        case DivergenceKind::JensenShannon: return "JensenShannon";
        case DivergenceKind::QJSD: return "QJSD";
        case DivergenceKind::VonNeumann: return "VonNeumann";
        case DivergenceKind::SMin: return "SMin";
        case DivergenceKind::SMax: return "SMax";
    }
    return "Unknown";
}

double atanh_over_x(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 + x2 * x2 / 5.0;
    }
    return std::atanh(x) / x;
}

double signed_binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::DomainError, fmt::format("h({}) outside [0,1]", x));
    double s = 0.0;
    if (x > 0.0) s += x * std::log(x);
    if (x < 1.0) s += (1.0 - x) * std::log1p(-x);
    return s;
}

double clamp_rounding_negative(double value, std::string_view what) {
    if (value >= 0.0) return value;
    if (value > -kNegativeSlack) return 0.0;
    throw Error(Errc::InternalConsistency, fmt::format("{} evaluated to {:.3e} < 0", what, value));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return clamp_rounding_negative(-sum_plogp(rho.eigenvalues()), "von Neumann entropy");
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(Errc::DimensionMismatch, "relative entropy of states of different dimension");
    require_full_rank(rho, "rho");
    require_full_rank(sigma, "sigma");
    const ComplexMatrix log_sigma = matrix_log_spectral(sigma.eig());
    const double cross = trace_of_product(rho.matrix(), log_sigma).real();
    return clamp_rounding_negative(sum_plogp(rho.eigenvalues()) - cross, "relative entropy");
}

double qubit_relative_entropy_closed_form(const Vec3& r1, const Vec3& r2) {
    const double a = norm(r1);
    const double b = norm(r2);
    if (!(a < 1.0) || !(b < 1.0)) throw Error(Errc::InvalidBloch, "closed-form qubit relative entropy needs r < 1");
    const double value =
        0.5 * (std::log1p(-a * a) - std::log1p(-b * b)) + a * a * atanh_over_x(a) - dot(r1, r2) * atanh_over_x(b);
    return clamp_rounding_negative(value, "qubit relative entropy");
}

double jeffreys(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return 0.5 * (relative_entropy(rho, sigma) + relative_entropy(sigma, rho));
}

double qjpd(const DensityMatrix& rho, const DensityMatrix& sigma) { return std::sqrt(jeffreys(rho, sigma)); }

double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const DensityMatrix mid = mix(rho, sigma, 0.5);
    const double value = von_neumann_entropy(mid) - 0.5 * (von_neumann_entropy(rho) + von_neumann_entropy(sigma));
    return clamp_rounding_negative(value, "Jensen-Shannon divergence");
}

double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma) { return std::sqrt(jensen_shannon(rho, sigma)); }

DivergenceValue evaluate(DivergenceKind kind, const DensityMatrix& rho, const DensityMatrix& sigma) {
    switch (kind) {
        case DivergenceKind::QRE: return {relative_entropy(rho, sigma), kind};
        case DivergenceKind::Jeffreys: return {jeffreys(rho, sigma), kind};
        case DivergenceKind::QJPD: return {qjpd(rho, sigma), kind};
        case DivergenceKind::JensenShannon: return {jensen_shannon(rho, sigma), kind};
        case DivergenceKind::QJSD: return {qjsd(rho, sigma), kind};
        case DivergenceKind::VonNeumann: return {von_neumann_entropy(rho), kind};
        case DivergenceKind::SMin: return {qre_bounds(rho, sigma).s_min, kind};
        case DivergenceKind::SMax: return {qre_bounds(rho, sigma).s_max, kind};
    }
    throw Error(Errc::InvalidParameter, "unknown divergence kind");
}

QreBounds qre_bounds(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(Errc::DimensionMismatch, "bounds of states of different dimension");
    require_full_rank(rho, "rho");
    require_full_rank(sigma, "sigma");
    QreBounds out;
    const ComplexMatrix diff = rho.matrix() - sigma.matrix();
    const auto diff_eig = hermitian_eig(diff);
    const double one = schatten_norm_from_spectrum(diff_eig.eigenvalues, SchattenP::One);
    const double two = schatten_norm_from_spectrum(diff_eig.eigenvalues, SchattenP::Two);
    const double sigma_min = sigma.eigenvalues().front();
    const double rho_max = rho.eigenvalues().back();
    out.pinsker_lower = 0.5 * one * one;
    out.two_norm_upper = two * two / sigma_min;

    // Projector onto the support of rho.
    double overlap = 0.0;
    const auto& v = rho.eig().eigenvectors;
    for (std::size_t k = 0; k < rho.dim(); ++k) {
        if (rho.eigenvalues()[k] <= kEigenvalueFloor) continue;
        for (std::size_t i = 0; i < rho.dim(); ++i)
            for (std::size_t j = 0; j < rho.dim(); ++j)
                overlap += (std::conj(v(i, k)) * sigma.matrix()(i, j) * v(j, k)).real();
    }
    out.s_min = clamp_rounding_negative(-std::log(std::min(overlap, 1.0)), "min-relative entropy");

    // Smallest lambda with lambda sigma - rho >= 0, bracketed by [1, kappa_max(rho)/kappa_min(sigma)].
    auto feasible = [&](double lambda) {
        const ComplexMatrix m = sigma.matrix() * Complex(lambda) - rho.matrix();
        return hermitian_eig(m).eigenvalues.front() >= -1e-14;
    };
    double lo = 1.0;
    double hi = std::max(1.0, rho_max / sigma_min);
    if (feasible(lo)) {
        hi = lo;
    } else {
        while (hi - lo > kSmaxTol * hi) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? hi : lo) = mid;
        }
    }
    out.s_max = std::log(hi);
    return out;
}

double asymmetry_function(double u, double v) {
    if (!(u >= std::max(0.0, -v) && u <= std::min(1.0, 1.0 - v))) {
        throw Error(Errc::DomainError, fmt::format("G({}, {}) outside its domain", u, v));
    }
    if (v == 0.0) return 0.0;
    const double w = u + v;
    if (u <= 0.0 || w >= 1.0) {
        throw Error(Errc::DomainError, fmt::format("G({}, {}) diverges on the domain boundary", u, v));
    }
    return binary_kl(w, u) - binary_kl(u, w);
}

double asymmetry_bound(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(Errc::DimensionMismatch, "bound of states of different dimension");
    require_full_rank(rho, "rho");
    require_full_rank(sigma, "sigma");
    const double u = std::min(rho.eigenvalues().front(), sigma.eigenvalues().front());
    const double v = 0.5 * schatten_norm(rho.matrix() - sigma.matrix(), SchattenP::One);
    return asymmetry_function(u, v);
}

EntropyRateCheck entropy_rate_identity_check(const StatePath& path, double t, double h) {
    if (!(h > 0.0) || t < h) {
        throw Error(Errc::InvalidParameter, fmt::format("central difference needs t >= h > 0 (t={}, h={})", t, h));
    }
    const DensityMatrix ahead = path(t + h);
    const DensityMatrix behind = path(t - h);
    const DensityMatrix now = path(t);
    require_full_rank(now, "rho_t");

    EntropyRateCheck out;
    out.lhs = (-sum_plogp(ahead.eigenvalues()) + sum_plogp(behind.eigenvalues())) / (2.0 * h);
    const ComplexMatrix rate = (ahead.matrix() - behind.matrix()) * Complex(1.0 / (2.0 * h));
    out.rhs = -trace_of_product(matrix_log_spectral(now.eig()), rate).real();
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace qslkit
