#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include <fmt/format.h>

#include "qslkit/error.hpp"

namespace qslkit {

struct QuadratureSpec {
    int panels = 2000;                  // even, >= 4
    double relative_tolerance = 1e-8;   // between successive rules
    int max_panels = 1 << 17;           // doubling stops here
};

template <std::size_t N>
struct QuadratureResult {
    std::array<double, N> value{};      // finest rule plus Richardson correction
    std::array<double, N> difference{}; // finest minus the one before
    int panels = 0;                     // finest panel count used
    bool converged = true;
};

/// Composite Simpson on [a, b] starting at `panels` panels and doubling (every node reused)
/// until two successive rules agree to the relative tolerance or max_panels is reached.
/// The result is Richardson-extrapolated from the last two rules. f(t) returns
/// std::array<double, N> so several integrands share one pass over the nodes.
template <std::size_t N, typename F>
QuadratureResult<N> simpson_refined(F&& f, double a, double b, const QuadratureSpec& spec) {
    if (spec.panels < 4 || spec.panels % 2 != 0) {
        throw Error(Errc::InvalidParameter, fmt::format("Simpson needs an even panel count >= 4, got {}", spec.panels));
    }
    QuadratureResult<N> out;
    if (b == a) return out;

    using Sums = std::array<double, N>;
    auto accumulate = [](Sums& acc, const Sums& x) {
        for (std::size_t k = 0; k < N; ++k) acc[k] += x[k];
    };

    int n = spec.panels;
    double h = (b - a) / n;
    // ends: f(a) + f(b); interior: all other nodes; odd: interior nodes with odd index
    Sums ends{}, interior{}, odd{};
    accumulate(ends, f(a));
    accumulate(ends, f(b));
    for (int i = 1; i < n; ++i) {
        const auto v = f(a + i * h);
        accumulate(interior, v);
        if (i % 2) accumulate(odd, v);
    }
    auto simpson = [&](double step, const Sums& in, const Sums& od) {
        Sums s{};
        for (std::size_t k = 0; k < N; ++k) s[k] = step / 3.0 * (ends[k] + 2.0 * in[k] + 2.0 * od[k]);
        return s;
    };
    Sums coarse = simpson(h, interior, odd);

    while (true) {
        Sums mid{};
        for (int i = 0; i < n; ++i) accumulate(mid, f(a + (i + 0.5) * h));
        accumulate(interior, mid);
        odd = mid;
        n *= 2;
        h *= 0.5;
        const Sums fine = simpson(h, interior, odd);

        bool ok = true;
        for (std::size_t k = 0; k < N; ++k) {
            const double diff = fine[k] - coarse[k];
            out.value[k] = fine[k] + diff / 15.0;
            out.difference[k] = diff;
            if (std::abs(diff) > spec.relative_tolerance * std::abs(fine[k]) && std::abs(diff) > 1e-15) ok = false;
        }
        out.panels = n;
        out.converged = ok;
        if (ok || 2 * n > spec.max_panels) return out;
        coarse = fine;
    }
}

}  // namespace qslkit
