#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "qslkit/channels.hpp"
#include "qslkit/divergences.hpp"
#include "qslkit/sampling.hpp"

using namespace qslkit;
using oracle::error_code;
using std::numbers::pi;

namespace {

// Reference values from an independent scipy (logm/eigvalsh) evaluation.
struct Pair {
    DensityMatrix a = from_bloch({0.5, pi / 3, 0.7});
    DensityMatrix b = from_bloch({0.8, 1.2, 2.0});
};

}  // namespace

TEST(Divergences, FrozenQubitPair) {
    const Pair p;
    EXPECT_NEAR(relative_entropy(p.a, p.b), 0.4235105079284668, 1e-12);
    EXPECT_NEAR(relative_entropy(p.b, p.a), 0.33740352197145906, 1e-12);
    EXPECT_NEAR(jeffreys(p.a, p.b), 0.3804570149499629, 1e-12);
    EXPECT_NEAR(qjpd(p.a, p.b), 0.6168119769832319, 1e-12);
    EXPECT_NEAR(jensen_shannon(p.a, p.b), 0.08978126869911485, 1e-12);
    EXPECT_NEAR(qjsd(p.a, p.b), 0.2996352260651522, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(p.a), 0.5623351446188084, 1e-13);
}

TEST(Divergences, FrozenBounds) {
    const Pair p;
    const auto bounds = qre_bounds(p.a, p.b);
    EXPECT_NEAR(bounds.pinsker_lower, 0.28616168804694164, 1e-13);
    EXPECT_NEAR(bounds.two_norm_upper, 2.861616880469416, 1e-12);
    EXPECT_NEAR(bounds.s_min, 0.0, 1e-15);
    EXPECT_NEAR(bounds.s_max, 1.4288745210456535, 1e-9);
    EXPECT_NEAR(asymmetry_function(0.1, 0.2), 0.037341830217793914, 1e-14);
}

TEST(Divergences, EvaluateDispatch) {
    const Pair p;
    EXPECT_EQ(evaluate(DivergenceKind::QJSD, p.a, p.b).value, qjsd(p.a, p.b));
    EXPECT_EQ(evaluate(DivergenceKind::SMax, p.a, p.b).kind, DivergenceKind::SMax);
    EXPECT_EQ(to_string(DivergenceKind::QJPD), "QJPD");
}

TEST(Divergences, OrthogonalPureStatesJensenShannon) {
    const auto up = DensityMatrix::from_bloch_vector({0.0, 0.0, 1.0});
    const auto down = DensityMatrix::from_bloch_vector({0.0, 0.0, -1.0});
    EXPECT_NEAR(jensen_shannon(up, down), std::log(2.0), 1e-15);
    EXPECT_NEAR(qjsd(up, down), std::sqrt(std::log(2.0)), 1e-15);
}

TEST(Divergences, PureArgumentsRejectedForRelativeEntropy) {
    const auto up = DensityMatrix::from_bloch_vector({0.0, 0.0, 1.0});
    const auto mixed = from_bloch({0.3, 1.0, 1.0});
    EXPECT_EQ(error_code([&] { relative_entropy(mixed, up); }), Errc::SingularState);
    EXPECT_EQ(error_code([&] { jeffreys(up, mixed); }), Errc::SingularState);
}

TEST(Divergences, ClosedFormQubitRelativeEntropy) {
    for (double r1 : oracle::linspace(0.0, 0.95, 9))
        for (double r2 : oracle::linspace(0.0, 0.95, 9))
            for (double ang : oracle::linspace(0.0, pi, 9)) {
                const Vec3 v1{0.0, 0.0, r1};
                const Vec3 v2{r2 * std::sin(ang), 0.0, r2 * std::cos(ang)};
                EXPECT_NEAR(qubit_relative_entropy_closed_form(v1, v2),
                            relative_entropy(DensityMatrix::from_bloch_vector(v1), DensityMatrix::from_bloch_vector(v2)),
                            1e-9);
            }
}

TEST(Divergences, UnitaryOrbitSymmetry) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto rho = from_bloch(random_bloch(rng));
        const auto v = random_unitary(2, rng);
        const DensityMatrix moved(v * rho.matrix() * v.adjoint());
        EXPECT_NEAR(relative_entropy(rho, moved), relative_entropy(moved, rho), 1e-10);
    }
}

TEST(Divergences, Helpers) {
    EXPECT_EQ(signed_binary_entropy(0.0), 0.0);
    EXPECT_NEAR(signed_binary_entropy(0.5), -std::log(2.0), 1e-15);
    EXPECT_EQ(atanh_over_x(0.0), 1.0);
    EXPECT_NEAR(atanh_over_x(1e-5), std::atanh(1e-5) / 1e-5, 1e-15);
    EXPECT_NEAR(atanh_over_x(0.7), std::atanh(0.7) / 0.7, 1e-15);
    EXPECT_EQ(clamp_rounding_negative(-1e-12, "x"), 0.0);
    EXPECT_EQ(error_code([] { clamp_rounding_negative(-1e-6, "x"); }), Errc::InternalConsistency);
}

TEST(Divergences, AsymmetryFunctionDomain) {
    EXPECT_EQ(asymmetry_function(0.3, 0.0), 0.0);
    EXPECT_EQ(error_code([] { asymmetry_function(0.9, 0.2); }), Errc::DomainError);
    EXPECT_EQ(error_code([] { asymmetry_function(0.0, 0.2); }), Errc::DomainError);
    EXPECT_EQ(error_code([] { asymmetry_function(-0.1, 0.2); }), Errc::DomainError);
}

// Property sweeps over random full-rank states.
TEST(DivergenceProperties, NonnegativeSymmetricAndBounded) {
    Rng rng(6);
    for (int i = 0; i < 300; ++i) {
        const std::size_t d = 2 + i % 3;
        const auto a = random_density_matrix(d, rng, 1e-3);
        const auto b = random_density_matrix(d, rng, 1e-3);
        const double s = relative_entropy(a, b);
        EXPECT_GE(s, 0.0);
        EXPECT_NEAR(relative_entropy(a, a), 0.0, 1e-12);
        EXPECT_NEAR(jeffreys(a, b), jeffreys(b, a), 1e-13);
        EXPECT_NEAR(jensen_shannon(a, b), jensen_shannon(b, a), 1e-13);
        EXPECT_LE(jensen_shannon(a, b), std::log(2.0) + 1e-12);
        const auto bounds = qre_bounds(a, b);
        EXPECT_LE(bounds.pinsker_lower, s + 1e-10);
        EXPECT_LE(s, bounds.two_norm_upper + 1e-10);
        EXPECT_LE(bounds.s_min, s + 1e-9);
        EXPECT_LE(s, bounds.s_max + 1e-9);
        EXPECT_LE(std::abs(s - relative_entropy(b, a)), asymmetry_bound(a, b) + 1e-10);
    }
}

TEST(DivergenceProperties, JensenShannonTriangle) {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto a = from_bloch(random_bloch(rng));
        const auto b = from_bloch(random_bloch(rng));
        const auto c = from_bloch(random_bloch(rng));
        EXPECT_LE(qjsd(a, c), qjsd(a, b) + qjsd(b, c) + 1e-10);
    }
}

TEST(DivergenceProperties, ContractiveUnderChannels) {
    Rng rng(8);
    for (auto kind : {ChannelKind::Depolarizing, ChannelKind::PhaseDamping, ChannelKind::GeneralizedAmplitudeDamping}) {
        for (int i = 0; i < 100; ++i) {
            const auto ops = kraus_operators({kind, 1.0, 0.3}, 0.05 + 0.03 * i);
            const auto a = from_bloch(random_bloch(rng));
            const auto b = from_bloch(random_bloch(rng));
            const DensityMatrix ea(apply_kraus(ops, a.matrix()));
            const DensityMatrix eb(apply_kraus(ops, b.matrix()));
            EXPECT_LE(relative_entropy(ea, eb), relative_entropy(a, b) + 1e-10);
            EXPECT_LE(jensen_shannon(ea, eb), jensen_shannon(a, b) + 1e-10);
        }
    }
}

TEST(DivergenceProperties, EntropyRateIdentity) {
    for (auto kind : {ChannelKind::Depolarizing, ChannelKind::PhaseDamping, ChannelKind::GeneralizedAmplitudeDamping}) {
        const Trajectory traj({0.7, 0.9, 1.3}, KrausChannel{kind, 1.5, 0.2});
        for (double t : oracle::linspace(0.02, 3.0, 20)) {
            const auto check = entropy_rate_identity_check([&](double s) { return traj.evolve(s); }, t);
            EXPECT_LT(check.gap, 1e-6) << to_string(kind) << " t=" << t;
        }
    }
    EXPECT_EQ(error_code([] {
                  entropy_rate_identity_check([](double) { return from_bloch({0.1, 0.0, 0.0}); }, 1e-6);
              }),
              Errc::InvalidParameter);
}
