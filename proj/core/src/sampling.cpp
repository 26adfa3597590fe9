#include "qslkit/sampling.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    ComplexMatrix q(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        // Draw a fresh column and orthogonalize it against the previous ones (twice, for stability).
        for (std::size_t i = 0; i < dim; ++i) q(i, j) = Complex(gauss(rng), gauss(rng));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj{};
                for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < dim; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double n2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) n2 += std::norm(q(i, j));
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) *= inv;
    }
    return q;
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, double min_eigenvalue) {
    if (dim == 0 || min_eigenvalue * static_cast<double>(dim) >= 1.0) {
        throw Error(Errc::InvalidParameter, fmt::format("cannot draw a {}-dim state with eigenvalues >= {}", dim, min_eigenvalue));
    }
    std::exponential_distribution<double> expo(1.0);
    RealVector p(dim);
    double total = 0.0;
    for (auto& x : p) total += (x = expo(rng));
    const double free_mass = 1.0 - min_eigenvalue * static_cast<double>(dim);
    for (auto& x : p) x = min_eigenvalue + free_mass * x / total;

    const ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix rho = u * ComplexMatrix::diagonal(p) * u.adjoint();
    // Remove rounding asymmetry so the Hermitian check is exact.
    for (std::size_t i = 0; i < dim; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < dim; ++j) rho(j, i) = std::conj(rho(i, j));
    }
    return DensityMatrix(rho);
}

BlochQubit random_bloch(Rng& rng, double r_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double cos_theta = 2.0 * unit(rng) - 1.0;
    double phi = 2.0 * std::numbers::pi * unit(rng);
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    return {r_max * unit(rng), std::acos(cos_theta), phi};
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = gauss(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            h(i, j) = Complex(gauss(rng), gauss(rng));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

}  // namespace qslkit
