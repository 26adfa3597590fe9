#include <gtest/gtest.h>

#include <cmath>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "qslkit/error.hpp"
#include "qslkit/linalg.hpp"
#include "qslkit/sampling.hpp"

using namespace qslkit;
using oracle::error_code;

namespace {

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}
}  // namespace

TEST(Eigensolver, KnownSymmetricPair) {
    const auto eig = hermitian_eig(from_rows({{2.0, 1.0}, {1.0, 2.0}}));
    EXPECT_NEAR(eig.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues[1], 3.0, 1e-14);
}

TEST(Eigensolver, ComplexOffDiagonal) {
    // [[1, i], [-i, 1]] has eigenvalues 0 and 2
    const auto eig = hermitian_eig(from_rows({{1.0, Complex(0, 1)}, {Complex(0, -1), 1.0}}));
    EXPECT_NEAR(eig.eigenvalues[0], 0.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues[1], 2.0, 1e-14);
}

TEST(Eigensolver, MatchesCharacteristicPolynomialRoots) {
    Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        const std::size_t d = 2 + i % 4;
        const auto a = random_hermitian(d, rng);
        const auto eig = hermitian_eig(a);
        const auto roots = oracle::eigenvalues(a);
        for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(eig.eigenvalues[k], roots[k], 1e-9) << "d=" << d;
    }
}

TEST(Eigensolver, ReconstructsAndIsOrthonormal) {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 2 + i % 6;
        const auto a = random_hermitian(d, rng);
        const auto eig = hermitian_eig(a);
        EXPECT_LT((spectral_apply(eig, [](double x) { return x; }) - a).max_abs(), 1e-12);
        EXPECT_LT((eig.eigenvectors.adjoint() * eig.eigenvectors - ComplexMatrix::identity(d)).max_abs(), 1e-12);
        for (std::size_t k = 1; k < d; ++k) EXPECT_LE(eig.eigenvalues[k - 1], eig.eigenvalues[k]);
    }
}

TEST(Eigensolver, RejectsNonHermitian) {
    EXPECT_EQ(error_code([] { hermitian_eig(from_rows({{1.0, 2.0}, {0.0, 1.0}})); }), Errc::NotHermitian);
}

TEST(Eigensolver, SweepLimitReportsNoConvergence) {
    Rng rng(9);
    JacobiOptions opts;
    opts.max_sweeps = 1;
    EXPECT_EQ(error_code([&] { hermitian_eig(random_hermitian(6, rng), opts); }), Errc::NoConvergence);
}

TEST(Schatten, PauliX) {
    const auto x = pauli_x();
    EXPECT_NEAR(schatten_norm(x, SchattenP::One), 2.0, 1e-15);
    EXPECT_NEAR(schatten_norm(x, SchattenP::Two), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(schatten_norm(x, SchattenP::Inf), 1.0, 1e-15);
}

TEST(Schatten, NonHermitianUsesSingularValues) {
    // [[1, 2], [0, 0]] has singular values sqrt(5) and 0
    const auto m = from_rows({{1.0, 2.0}, {0.0, 0.0}});
    const auto sv = singular_values(m);
    EXPECT_NEAR(sv[0] + sv[1], std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(schatten_norm(m, SchattenP::One), std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(schatten_norm(m, SchattenP::Inf), std::sqrt(5.0), 1e-14);
}

TEST(Schatten, SingularValuesSquaredAreEigenvaluesOfGram) {
    Rng rng(10);
    for (int i = 0; i < 30; ++i) {
        const std::size_t d = 2 + i % 3;
        ComplexMatrix m = random_unitary(d, rng) * random_hermitian(d, rng) * random_unitary(d, rng);
        auto sv = singular_values(m);
        std::vector<double> sq;
        for (double s : sv) sq.push_back(s * s);
        std::sort(sq.begin(), sq.end());
        const auto gram = oracle::eigenvalues(m.adjoint() * m);
        for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(sq[k], gram[k], 1e-9);
    }
}

TEST(Schatten, OrderingAndUnitaryInvariance) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + i % 4;
        const auto a = random_hermitian(d, rng);
        const double n1 = schatten_norm(a, SchattenP::One);
        const double n2 = schatten_norm(a, SchattenP::Two);
        const double ni = schatten_norm(a, SchattenP::Inf);
        EXPECT_GE(n1 + 1e-12, n2);
        EXPECT_GE(n2 + 1e-12, ni);
        const auto u = random_unitary(d, rng);
        EXPECT_NEAR(schatten_norm(u * a * u.adjoint(), SchattenP::One), n1, 1e-10);
    }
}

TEST(MatrixLog, SpectralMatchesScalingSquaringOracle) {
    Rng rng(12);
    for (int i = 0; i < 40; ++i) {
        const auto rho = random_density_matrix(2 + i % 3, rng, 1e-3);
        EXPECT_LT((matrix_log_spectral(rho.matrix()) - oracle::logm(rho.matrix())).max_abs(), 1e-9);
    }
}

TEST(MatrixLog, IntegralMatchesSpectral) {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_density_matrix(2 + i % 3, rng, 1e-3);
        EXPECT_LT((matrix_log_integral(rho.matrix()) - matrix_log_spectral(rho.matrix())).max_abs(), 1e-7);
    }
}

TEST(MatrixLog, DiagonalValues) {
    const auto m = ComplexMatrix::diagonal(std::vector<double>{0.25, 0.75});
    const auto l = matrix_log_integral(m);
    EXPECT_NEAR(l(0, 0).real(), std::log(0.25), 1e-9);
    EXPECT_NEAR(l(1, 1).real(), std::log(0.75), 1e-9);
    EXPECT_NEAR(std::abs(l(0, 1)), 0.0, 1e-15);
}

TEST(MatrixLog, ExpInvertsLog) {
    Rng rng(14);
    const auto rho = random_density_matrix(3, rng, 1e-2);
    EXPECT_LT((matrix_exp_hermitian(matrix_log_spectral(rho.matrix())) - rho.matrix()).max_abs(), 1e-12);
}

TEST(MatrixLog, SingularInputRejected) {
    const auto pure = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    EXPECT_EQ(error_code([&] { matrix_log_spectral(pure); }), Errc::SingularState);
    EXPECT_EQ(error_code([&] { matrix_log_integral(pure); }), Errc::SingularState);
}

TEST(MatrixLog, PanelBudgetExhaustionReported) {
    LogQuadratureSpec spec;
    spec.panels = 4;
    spec.max_panels = 8;
    spec.tolerance = 1e-14;
    const auto m = ComplexMatrix::diagonal(std::vector<double>{1e-3, 1.0 - 1e-3});
    EXPECT_EQ(error_code([&] { matrix_log_integral(m, spec); }), Errc::QuadratureFailure);
}

TEST(Algebra, PauliCommutator) {
    const auto c = commutator(pauli_x(), pauli_y());
    EXPECT_LT((c - pauli_z() * Complex(0, 2)).max_abs(), 1e-15);
}

TEST(Algebra, InverseAndTraceOfProduct) {
    Rng rng(15);
    const auto rho = random_density_matrix(4, rng, 1e-2);
    EXPECT_LT((inverse(rho.matrix()) * rho.matrix() - ComplexMatrix::identity(4)).max_abs(), 1e-10);
    const auto h = random_hermitian(4, rng);
    EXPECT_NEAR(std::abs(trace_of_product(rho.matrix(), h) - (rho.matrix() * h).trace()), 0.0, 1e-14);
    EXPECT_EQ(error_code([] { inverse(ComplexMatrix::zero(2)); }), Errc::SingularState);
}
