#include "qslkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::SingularState: return "SingularState";
        case Errc::QuadratureFailure: return "QuadratureFailure";
        case Errc::InvalidBloch: return "InvalidBloch";
        case Errc::InvalidState: return "InvalidState";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DomainError: return "DomainError";
        case Errc::InvalidParameter: return "InvalidParameter";
        case Errc::UnsupportedForDrive: return "UnsupportedForDrive";
        case Errc::ChannelMismatch: return "ChannelMismatch";
        case Errc::InternalConsistency: return "InternalConsistency";
        case Errc::NumericalContract: return "NumericalContract";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw Error(Errc::DimensionMismatch, fmt::format("{}: {}x{} vs {}x{}", op, a.dim(), a.dim(), b.dim(), b.dim()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : dim_(dim), data_(entries.begin(), entries.end()) {
    if (data_.size() != dim * dim) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("expected {} entries for a {}x{} matrix, got {}", dim * dim, dim, dim, data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::hermitian_defect() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs() const noexcept {
    double worst = 0.0;
    for (const auto& z : data_) worst = std::max(worst, std::abs(z));
    return worst;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs, "operator*");
    const std::size_t d = lhs.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex lik = lhs(i, k);
            if (lik == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) out(i, j) += lik * rhs(k, j);
        }
    return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_of_product");
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    return t;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

EigenDecomposition hermitian_eig(const ComplexMatrix& a, const JacobiOptions& opts) {
    const std::size_t d = a.dim();
    const double defect = a.hermitian_defect();
    if (defect > opts.hermitian_tol) {
        throw Error(Errc::NotHermitian, fmt::format("hermitian defect {:.3e} exceeds {:.1e}", defect, opts.hermitian_tol));
    }

    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < d; ++j) {
            m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
            m(j, i) = std::conj(m(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = m.frobenius_norm();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) s += 2.0 * std::norm(m(i, j));
        return std::sqrt(s);
    };

    bool converged = scale == 0.0;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        if (off_norm() <= opts.off_diagonal_tol * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const Complex apq = m(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = std::conj(apq / mag);
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = diag-phase on q followed by a real plane rotation; A <- J^dagger A J.
                for (std::size_t i = 0; i < d; ++i) {
                    const Complex aip = m(i, p);
                    const Complex aiq = m(i, q) * phase;
                    m(i, p) = c * aip - s * aiq;
                    m(i, q) = s * aip + c * aiq;
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q) * phase;
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
                const Complex phase_conj = std::conj(phase);
                for (std::size_t j = 0; j < d; ++j) {
                    const Complex apj = m(p, j);
                    const Complex aqj = m(q, j) * phase_conj;
                    m(p, j) = c * apj - s * aqj;
                    m(q, j) = s * apj + c * aqj;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
            }
        }
    }
    if (!converged && off_norm() > opts.off_diagonal_tol * scale) {
        throw Error(Errc::NoConvergence, fmt::format("Jacobi did not converge in {} sweeps", opts.max_sweeps));
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m(x, x).real() < m(y, y).real(); });

    EigenDecomposition out{RealVector(d), ComplexMatrix(d)};
    for (std::size_t k = 0; k < d; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

RealVector singular_values(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    ComplexMatrix u = a;
    auto column_dot = [&](std::size_t p, std::size_t q) {
        Complex s{};
        for (std::size_t i = 0; i < d; ++i) s += std::conj(u(i, p)) * u(i, q);
        return s;
    };
    auto column_norm2 = [&](std::size_t p) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::norm(u(i, p));
        return s;
    };

    constexpr int kMaxSweeps = 100;
    constexpr double kOrthTol = 1e-15;
    bool rotated = true;
    for (int sweep = 0; sweep < kMaxSweeps && rotated; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double alpha = column_norm2(p);
                const double beta = column_norm2(q);
                const Complex gamma = column_dot(p, q);
                const double mag = std::abs(gamma);
                if (alpha == 0.0 || beta == 0.0 || mag <= kOrthTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = std::conj(gamma / mag);
                const double zeta = (beta - alpha) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < d; ++i) {
                    const Complex up = u(i, p);
                    const Complex uq = u(i, q) * phase;
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
            }
        }
    }
    if (rotated) {
        throw Error(Errc::NoConvergence, "one-sided Jacobi SVD did not converge");
    }

    RealVector sv(d);
    for (std::size_t p = 0; p < d; ++p) sv[p] = std::sqrt(column_norm2(p));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double schatten_norm_from_spectrum(std::span<const double> eigenvalues, SchattenP p) {
    double acc = 0.0;
    for (double x : eigenvalues) {
        const double ax = std::abs(x);
        switch (p) {
            case SchattenP::One: acc += ax; break;
            case SchattenP::Two: acc += ax * ax; break;
            case SchattenP::Inf: acc = std::max(acc, ax); break;
        }
    }
    return p == SchattenP::Two ? std::sqrt(acc) : acc;
}

double schatten_norm(const ComplexMatrix& a, SchattenP p) {
    if (p == SchattenP::Two) return a.frobenius_norm();
    if (a.dim() == 0) return 0.0;
    if (a.is_hermitian()) {
        const auto eig = hermitian_eig(a);
        return schatten_norm_from_spectrum(eig.eigenvalues, p);
    }
    const auto sv = singular_values(a);
    return schatten_norm_from_spectrum(sv, p);
}

ComplexMatrix matrix_log_spectral(const EigenDecomposition& eig) {
    for (double p : eig.eigenvalues) {
        if (p <= kEigenvalueFloor) {
            throw Error(Errc::SingularState, fmt::format("eigenvalue {:.3e} at or below floor {:.0e}", p, kEigenvalueFloor));
        }
    }
    return spectral_apply(eig, [](double p) { return std::log(p); });
}

ComplexMatrix matrix_log_spectral(const ComplexMatrix& rho) { return matrix_log_spectral(hermitian_eig(rho)); }

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& a) {
    return spectral_apply(hermitian_eig(a), [](double x) { return std::exp(x); });
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    ComplexMatrix work = a;
    ComplexMatrix inv = ComplexMatrix::identity(d);
    const double scale = a.max_abs();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        const double pivot_mag = std::abs(work(pivot, col));
        if (pivot_mag == 0.0 || pivot_mag <= 1e-15 * scale) {
            throw Error(Errc::SingularState, "matrix is numerically singular");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < d; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Complex inv_pivot = 1.0 / work(col, col);
        for (std::size_t j = 0; j < d; ++j) {
            work(col, j) *= inv_pivot;
            inv(col, j) *= inv_pivot;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const Complex factor = work(r, col);
            if (factor == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) {
                work(r, j) -= factor * work(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

ComplexMatrix matrix_log_integral(const ComplexMatrix& rho, const LogQuadratureSpec& spec) {
    if (spec.panels < 2 || spec.panels % 2 != 0) {
        throw Error(Errc::InvalidParameter, "Simpson panel count must be even and >= 2");
    }
    const std::size_t d = rho.dim();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const ComplexMatrix shifted = rho - id;

    // Integrand after u = s/(1-s):  ((1-s) rho + s I)^{-1} (rho - I), finite on [0, 1].
    auto integrand = [&](double s) {
        if (s >= 1.0) return shifted;
        ComplexMatrix m = rho * Complex(1.0 - s);
        for (std::size_t i = 0; i < d; ++i) m(i, i) += s;
        return inverse(m) * shifted;
    };

    // Running Simpson sums; doubling turns the old odd nodes into even ones.
    int n = spec.panels / 2;
    ComplexMatrix ends = integrand(0.0) + integrand(1.0);
    ComplexMatrix even(d);
    ComplexMatrix odd(d);
    for (int k = 1; k < n; k += 2) odd += integrand(static_cast<double>(k) / n);
    for (int k = 2; k < n; k += 2) even += integrand(static_cast<double>(k) / n);
    auto simpson = [&](int panels) {
        ComplexMatrix s = ends + odd * Complex(4.0) + even * Complex(2.0);
        return s * Complex(1.0 / (3.0 * panels));
    };
    ComplexMatrix previous = simpson(n);

    while (true) {
        even += odd;
        odd = ComplexMatrix(d);
        const int doubled = 2 * n;
        for (int k = 1; k < doubled; k += 2) odd += integrand(static_cast<double>(k) / doubled);
        n = doubled;
        ComplexMatrix current = simpson(n);
        const double estimate = (current - previous).max_abs() / 15.0;
        if (estimate <= spec.tolerance) {
            return current + (current - previous) * Complex(1.0 / 15.0);
        }
        if (n >= spec.max_panels) {
            throw Error(Errc::QuadratureFailure,
                        fmt::format("log integral error estimate {:.2e} above {:.1e} at {} panels", estimate,
                                    spec.tolerance, n));
        }
        previous = std::move(current);
    }
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace qslkit
