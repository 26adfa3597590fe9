#pragma once

#include <array>
#include <utility>

#include "qslkit/linalg.hpp"

namespace qslkit {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a);
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

/// Qubit in polar Bloch coordinates. r is strictly below 1 so the state is full rank.
struct BlochQubit {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;

    /// Throws InvalidBloch unless r in [0,1), theta in [0,pi], phi in [0,2pi).
    void validate() const;
    Vec3 unit_vector() const;
    Vec3 vector() const { return scaled(unit_vector(), r); }

    /// Angles from a Cartesian vector; phi is wrapped into [0, 2pi).
    static BlochQubit from_cartesian(const Vec3& v);
};

/// Hermitian, unit-trace, positive semidefinite matrix with a cached spectrum.
class DensityMatrix {
public:
    /// Validates and diagonalizes. Throws NotHermitian / InvalidState.
    explicit DensityMatrix(const ComplexMatrix& m);

    /// Qubit from a Bloch vector of length <= 1 (pure states allowed).
    static DensityMatrix from_bloch_vector(const Vec3& v);

    std::size_t dim() const noexcept { return matrix_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const EigenDecomposition& eig() const noexcept { return eig_; }
    const RealVector& eigenvalues() const noexcept { return eig_.eigenvalues; }

private:
    DensityMatrix(ComplexMatrix m, EigenDecomposition eig);

    ComplexMatrix matrix_;
    EigenDecomposition eig_;
};

/// (I + r.sigma)/2 with the closed-form spectrum (1 -+ r)/2.
DensityMatrix from_bloch(const BlochQubit& q);

struct BlochCoordinates {
    Vec3 vector{};
    double r = 0.0;
    double theta = 0.0;  // 0 when r = 0
    double phi = 0.0;    // 0 when r = 0

    BlochQubit qubit() const { return {r, theta, phi}; }
};

/// r_k = Tr(rho sigma_k). Throws DimensionMismatch for d != 2.
BlochCoordinates to_bloch(const DensityMatrix& rho);
Vec3 bloch_vector(const ComplexMatrix& rho);

/// w a + (1 - w) b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

/// (smallest, largest) eigenvalue.
std::pair<double, double> kappa_min_max(const DensityMatrix& rho);

}  // namespace qslkit
