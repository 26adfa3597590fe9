#pragma once

// Reference computations independent of the library eigensolver and logs: characteristic-polynomial
// eigenvalues, a Denman-Beavers square-root log, and a small CSV reader for round trips.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslkit/linalg.hpp"

namespace oracle {

using qslkit::Complex;
using qslkit::ComplexMatrix;

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

// Faddeev-LeVerrier: det(xI - A) = x^d + c[d-1] x^(d-1) + ... + c[0].
inline std::vector<Complex> characteristic_polynomial(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    std::vector<Complex> c(d + 1);
    c[d] = 1.0;
    ComplexMatrix m = ComplexMatrix::zero(d);
    for (std::size_t k = 1; k <= d; ++k) {
        ComplexMatrix next = a * m;
        for (std::size_t i = 0; i < d; ++i) next(i, i) += c[d - k + 1];
        m = next;
        c[d - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

// Durand-Kerner roots of a monic polynomial; real parts sorted ascending.
inline std::vector<double> polynomial_real_roots(const std::vector<Complex>& c) {
    const std::size_t d = c.size() - 1;
    std::vector<Complex> z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = std::pow(Complex(0.4, 0.9), static_cast<double>(i));
    auto eval = [&](Complex x) {
        Complex acc = c[d];
        for (std::size_t k = d; k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        double moved = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            const Complex step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15) break;
    }
    std::vector<double> out;
    for (auto x : z) out.push_back(x.real());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<double> eigenvalues(const ComplexMatrix& a) { return polynomial_real_roots(characteristic_polynomial(a)); }

// Denman-Beavers square root of a positive definite matrix.
inline ComplexMatrix sqrtm(const ComplexMatrix& a) {
    ComplexMatrix y = a;
    ComplexMatrix z = ComplexMatrix::identity(a.dim());
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix yi = qslkit::inverse(y);
        const ComplexMatrix zi = qslkit::inverse(z);
        const ComplexMatrix y_next = (y + zi) * Complex(0.5);
        z = (z + yi) * Complex(0.5);
        const double change = (y_next - y).max_abs();
        y = y_next;
        if (change < 1e-15) break;
    }
    return y;
}

// Inverse scaling and squaring: take square roots until close to I, then a Mercator series.
inline ComplexMatrix logm(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    ComplexMatrix x = a;
    int roots = 0;
    while ((x - id).max_abs() > 0.05) {
        x = sqrtm(x);
        ++roots;
    }
    const ComplexMatrix e = x - id;
    ComplexMatrix term = e;
    ComplexMatrix sum = ComplexMatrix::zero(d);
    for (int k = 1; k < 60; ++k) {
        sum = sum + term * Complex((k % 2 ? 1.0 : -1.0) / k);
        term = term * e;
    }
    return sum * Complex(std::ldexp(1.0, roots));
}

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::out_of_range("no column " + name);
        return static_cast<std::size_t>(it - header.begin());
    }
    std::vector<double> values(const std::string& name) const {
        const auto c = column(name);
        std::vector<double> out;
        for (const auto& row : rows) out.push_back(row.at(c));
        return out;
    }
};

inline CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
        } else if (t.header.empty()) {
            t.header = split(line);
        } else {
            std::vector<double> row;
            for (const auto& cell : split(line)) row.push_back(std::stod(cell));
            if (row.size() != t.header.size()) throw std::runtime_error("ragged CSV row: " + line);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_csv(in);
}

}  // namespace oracle
