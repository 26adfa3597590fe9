#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

#include <boost/container/small_vector.hpp>

namespace qslkit {

using Complex = std::complex<double>;

/// Real vector with inline storage for the small dimensions used here.
using RealVector = boost::container::small_vector<double, 4>;

/// Dense square complex matrix, row-major. Dimensions up to 4 live inline.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    /// Row-major entries; the list length must be dim*dim.
    ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(const boost::container::small_vector<double, 4>& values) {
        return diagonal(std::span<const double>(values.data(), values.size()));
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    std::span<const Complex> entries() const noexcept { return {data_.data(), data_.size()}; }

    ComplexMatrix adjoint() const;
    Complex trace() const noexcept;
    /// max_ij |A_ij - conj(A_ji)|
    double hermitian_defect() const noexcept;
    bool is_hermitian(double tol = 1e-12) const noexcept { return hermitian_defect() <= tol; }
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    std::size_t dim_ = 0;
    boost::container::small_vector<Complex, 16> data_;
};

/// Trace of a*b without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

struct EigenDecomposition {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // columns
};

struct JacobiOptions {
    double off_diagonal_tol = 1e-13;  // relative to the Frobenius norm
    int max_sweeps = 100;
    double hermitian_tol = 1e-12;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
/// Throws NotHermitian / NoConvergence.
EigenDecomposition hermitian_eig(const ComplexMatrix& a, const JacobiOptions& opts = {});

/// Singular values (descending) of a square matrix by one-sided Jacobi.
RealVector singular_values(const ComplexMatrix& a);

enum class SchattenP { One, Two, Inf };

double schatten_norm(const ComplexMatrix& a, SchattenP p);
/// Schatten norm from a known spectrum of a Hermitian operator.
double schatten_norm_from_spectrum(std::span<const double> eigenvalues, SchattenP p);
inline double schatten_norm_from_spectrum(const RealVector& eigenvalues, SchattenP p) {
    return schatten_norm_from_spectrum(std::span<const double>(eigenvalues.data(), eigenvalues.size()), p);
}

/// Rebuilds V f(diag) V^dagger from a decomposition.
template <typename F>
ComplexMatrix spectral_apply(const EigenDecomposition& eig, F&& f) {
    const std::size_t d = eig.eigenvalues.size();
    ComplexMatrix out(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double fk = f(eig.eigenvalues[k]);
        for (std::size_t i = 0; i < d; ++i) {
            const Complex vik = eig.eigenvectors(i, k) * fk;
            for (std::size_t j = 0; j < d; ++j) {
                out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
            }
        }
    }
    return out;
}

/// Smallest eigenvalue accepted by logarithms.
inline constexpr double kEigenvalueFloor = 1e-12;

/// ln(rho) = sum_j ln p_j |j><j|. Throws SingularState if any p_j <= floor.
ComplexMatrix matrix_log_spectral(const ComplexMatrix& rho);
ComplexMatrix matrix_log_spectral(const EigenDecomposition& eig);

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& a);

struct LogQuadratureSpec {
    int panels = 4096;        // initial Simpson panel count (even)
    double tolerance = 1e-8;  // on the Richardson error estimate, max-abs entry
    int max_panels = 1 << 22;
};

/// ln(rho) from  int_0^inf du [ (1+u)^{-1} I - (rho + u I)^{-1} ]  mapped to s = u/(1+u) in [0,1]
/// and integrated by composite Simpson with panel doubling. Uses no eigendecomposition.
/// Throws SingularState / QuadratureFailure.
ComplexMatrix matrix_log_integral(const ComplexMatrix& rho, const LogQuadratureSpec& spec = {});

/// Gauss-Jordan inverse with partial pivoting. Throws SingularState.
ComplexMatrix inverse(const ComplexMatrix& a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qslkit
