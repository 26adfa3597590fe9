#pragma once

#include <random>

#include "qslkit/states.hpp"

namespace qslkit {

using Rng = std::mt19937_64;

/// Haar-ish random unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Random full-rank state U diag(p) U^dagger with every p_j >= min_eigenvalue.
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, double min_eigenvalue = 1e-3);

/// Uniform direction, radius uniform in [0, r_max].
BlochQubit random_bloch(Rng& rng, double r_max = 0.95);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

}  // namespace qslkit
