#pragma once

#include <functional>
#include <string_view>

#include "qslkit/states.hpp"

namespace qslkit {

enum class DivergenceKind { QRE, Jeffreys, QJPD, JensenShannon, QJSD, VonNeumann, SMin, SMax };

std::string_view to_string(DivergenceKind kind) noexcept;

/// A measure value in nats.
struct DivergenceValue {
    double value = 0.0;
    DivergenceKind kind = DivergenceKind::QRE;
};

/// x ln x + (1-x) ln(1-x) with 0 ln 0 = 0. Domain [0, 1].
double signed_binary_entropy(double x);

/// atanh(x)/x, equal to 1 at x = 0.
double atanh_over_x(double x);

/// Values in (-1e-10, 0) become 0; anything more negative throws InternalConsistency.
double clamp_rounding_negative(double value, std::string_view what);

double von_neumann_entropy(const DensityMatrix& rho);

/// Tr rho (ln rho - ln sigma). Both arguments must be full rank (SingularState otherwise).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Qubit relative entropy from Bloch vectors of length < 1, without matrix logarithms.
double qubit_relative_entropy_closed_form(const Vec3& r1, const Vec3& r2);

/// (S(rho||sigma) + S(sigma||rho)) / 2
double jeffreys(const DensityMatrix& rho, const DensityMatrix& sigma);
/// sqrt of jeffreys
double qjpd(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S((rho+sigma)/2) - (S(rho) + S(sigma))/2. Full rank is not needed.
double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma);
/// sqrt of jensen_shannon
double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma);

DivergenceValue evaluate(DivergenceKind kind, const DensityMatrix& rho, const DensityMatrix& sigma);

struct QreBounds {
    double pinsker_lower = 0.0;   // ||rho - sigma||_1^2 / 2
    double two_norm_upper = 0.0;  // ||rho - sigma||_2^2 / kappa_min(sigma)
    double s_min = 0.0;           // -ln Tr(P_rho sigma)
    double s_max = 0.0;           // ln min{lambda : lambda sigma - rho >= 0}
};

QreBounds qre_bounds(const DensityMatrix& rho, const DensityMatrix& sigma);

/// G(u, v) = g(u+v, u) - g(u, u+v), g(p,q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)).
/// Throws DomainError outside max(0,-v) <= u <= min(1,1-v) or where g diverges.
double asymmetry_function(double u, double v);

/// Upper bound on |S(rho||sigma) - S(sigma||rho)|.
double asymmetry_bound(const DensityMatrix& rho, const DensityMatrix& sigma);

struct EntropyRateCheck {
    double lhs = 0.0;  // central difference of S(rho_t)
    double rhs = 0.0;  // -Tr(ln rho_t * central difference of rho_t)
    double gap = 0.0;
};

using StatePath = std::function<DensityMatrix(double)>;

/// Compares dS/dt with -Tr(ln rho_t drho_t/dt) using central differences of step h (t >= h).
EntropyRateCheck entropy_rate_identity_check(const StatePath& path, double t, double h = 1e-5);

}  // namespace qslkit
