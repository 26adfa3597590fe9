#include "qslkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

namespace {

constexpr double kTraceTol = 1e-8;
constexpr double kNegativeEigTol = 1e-12;

// Spectral data of (I + v.sigma)/2 written down directly.
EigenDecomposition qubit_eig(const Vec3& v) {
    const double r = norm(v);
    EigenDecomposition eig{RealVector{0.5 * (1.0 - r), 0.5 * (1.0 + r)}, ComplexMatrix::identity(2)};
    if (r == 0.0) return eig;
    const double theta = std::acos(std::clamp(v[2] / r, -1.0, 1.0));
    const double phi = std::atan2(v[1], v[0]);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex e = std::polar(1.0, phi);
    // column 0: lower eigenvalue, column 1: upper eigenvalue
    eig.eigenvectors(0, 0) = -std::conj(e) * s;
    eig.eigenvectors(1, 0) = c;
    eig.eigenvectors(0, 1) = c;
    eig.eigenvectors(1, 1) = e * s;
    return eig;
}

ComplexMatrix qubit_matrix(const Vec3& v) {
    return ComplexMatrix(2, {0.5 * (1.0 + v[2]), Complex(0.5 * v[0], -0.5 * v[1]), Complex(0.5 * v[0], 0.5 * v[1]),
                             0.5 * (1.0 - v[2])});
}

}  // namespace

double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }

void BlochQubit::validate() const {
    if (!(r >= 0.0 && r < 1.0)) throw Error(Errc::InvalidBloch, fmt::format("r = {} outside [0, 1)", r));
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw Error(Errc::InvalidBloch, fmt::format("theta = {} outside [0, pi]", theta));
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw Error(Errc::InvalidBloch, fmt::format("phi = {} outside [0, 2pi)", phi));
}

Vec3 BlochQubit::unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

BlochQubit BlochQubit::from_cartesian(const Vec3& v) {
    const double r = norm(v);
    if (r == 0.0) return {};
    double phi = std::atan2(v[1], v[0]);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    return {r, std::acos(std::clamp(v[2] / r, -1.0, 1.0)), phi};
}

DensityMatrix::DensityMatrix(ComplexMatrix m, EigenDecomposition eig) : matrix_(std::move(m)), eig_(std::move(eig)) {}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : matrix_(m), eig_(hermitian_eig(m)) {
    const double trace_err = std::abs(m.trace() - 1.0);
    if (trace_err > kTraceTol) {
        throw Error(Errc::InvalidState, fmt::format("trace differs from 1 by {:.3e}", trace_err));
    }
    if (eig_.eigenvalues.front() < -kNegativeEigTol) {
        throw Error(Errc::InvalidState, fmt::format("negative eigenvalue {:.3e}", eig_.eigenvalues.front()));
    }
}

DensityMatrix DensityMatrix::from_bloch_vector(const Vec3& v) {
    const double r = norm(v);
    if (!(r <= 1.0 + 1e-12)) throw Error(Errc::InvalidBloch, fmt::format("Bloch vector length {} exceeds 1", r));
    return DensityMatrix(qubit_matrix(v), qubit_eig(v));
}

DensityMatrix from_bloch(const BlochQubit& q) {
    q.validate();
    return DensityMatrix::from_bloch_vector(q.vector());
}

Vec3 bloch_vector(const ComplexMatrix& rho) {
    if (rho.dim() != 2) throw Error(Errc::DimensionMismatch, fmt::format("Bloch vector needs d = 2, got {}", rho.dim()));
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

BlochCoordinates to_bloch(const DensityMatrix& rho) {
    BlochCoordinates out;
    out.vector = bloch_vector(rho.matrix());
    const BlochQubit q = BlochQubit::from_cartesian(out.vector);
    out.r = q.r;
    out.theta = q.theta;
    out.phi = q.phi;
    return out;
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
    if (a.dim() != b.dim()) {
        throw Error(Errc::DimensionMismatch, fmt::format("mix of {}- and {}-dimensional states", a.dim(), b.dim()));
    }
    if (!(w >= 0.0 && w <= 1.0)) throw Error(Errc::InvalidParameter, fmt::format("mixing weight {} outside [0,1]", w));
    if (a.dim() == 2) {
        const Vec3 va = bloch_vector(a.matrix());
        const Vec3 vb = bloch_vector(b.matrix());
        return DensityMatrix::from_bloch_vector(
            {w * va[0] + (1 - w) * vb[0], w * va[1] + (1 - w) * vb[1], w * va[2] + (1 - w) * vb[2]});
    }
    return DensityMatrix(a.matrix() * Complex(w) + b.matrix() * Complex(1.0 - w));
}

std::pair<double, double> kappa_min_max(const DensityMatrix& rho) {
    return {rho.eigenvalues().front(), rho.eigenvalues().back()};
}

}  // namespace qslkit
