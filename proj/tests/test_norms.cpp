#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "fdalg/fdalg.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace fdalg;
using namespace std::complex_literals;
using fdalg::testing::algebra_catalog;
using fdalg::testing::semigroup_catalog;

namespace {

const Algebra& t2() {
    static const Algebra a = polynomial_quotient_algebra(Vector{0.0, 0.0, 1.0});
    return a;
}

std::vector<NormKind> applicable_norms(const Algebra& a) {
    std::vector<NormKind> out;
    for (NormKind k : {NormKind::Sup, NormKind::L1, NormKind::CoordinateL1})
        if (norm_applicable(k, a)) out.push_back(k);
    return out;
}

/// Norms under which the algebra is a normed algebra: the sup and l1 norms
/// always are, the coordinate norm only for some bases.
std::vector<NormKind> algebra_norms(const Algebra& a) {
    std::vector<NormKind> out;
    for (NormKind k : applicable_norms(a))
        if (k != NormKind::CoordinateL1 || check_normed_algebra(a, k, 200, 1).passed()) out.push_back(k);
    return out;
}

} // namespace

TEST(Norm, Examples) {
    EXPECT_EQ(norm(NormKind::Sup, function_algebra(2), {2.0, 3i}), 3.0);
    const Semigroup z3 = cyclic_group(3);
    const Algebra a = semigroup_algebra(z3);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(norm(NormKind::L1, a, a.basis(i)), 1.0);
    EXPECT_EQ(norm(NormKind::L1, a, {1.0, 2i, -3.0}), 6.0);
}

TEST(Norm, InapplicableKindsThrow) {
    EXPECT_THROW(norm(NormKind::Sup, t2(), t2().identity()), InapplicableNorm);
    EXPECT_THROW(norm(NormKind::L1, function_algebra(2), {1.0, 1.0}), InapplicableNorm);
    EXPECT_EQ(parse_norm_kind("coordinate-l1"), NormKind::CoordinateL1);
    EXPECT_FALSE(parse_norm_kind("l2").has_value());
}

TEST(CheckNormedAlgebra, Examples) {
    const NormedAlgebraReport sup = check_normed_algebra(function_algebra(4), NormKind::Sup, 1000, 3);
    EXPECT_EQ(sup.violations, 0u);
    EXPECT_EQ(sup.identity_norm, 1.0);

    const NormedAlgebraReport dual = check_normed_algebra(t2(), NormKind::CoordinateL1, 1000, 3);
    EXPECT_EQ(dual.violations, 0u);
    EXPECT_EQ(dual.identity_norm, 1.0);
}

TEST(CheckNormedAlgebra, CoordinateNormCanFailSubmultiplicativity) {
    // In C[t]/(t^2 - 4), t * t = 4e, so ||t t|| = 4 > 1 = ||t||^2.
    const Algebra a = polynomial_quotient_algebra(Vector{-4.0, 0.0, 1.0});
    EXPECT_GT(check_normed_algebra(a, NormKind::CoordinateL1, 100, 3).violations, 0u);
}

TEST(CheckNormedAlgebra, ConvolutionNormOnEveryCatalogSemigroup) {
    for (const auto& entry : semigroup_catalog()) {
        const NormedAlgebraReport r = check_normed_algebra(semigroup_algebra(entry.semigroup), NormKind::L1, 1000, 7);
        EXPECT_EQ(r.violations, 0u) << entry.name;
        EXPECT_GE(r.worst_submultiplicative, -1e-12) << entry.name;
    }
}

TEST(Neumann, Examples) {
    const NeumannSeries zero = neumann_inverse(t2(), NormKind::CoordinateL1, 2.0, Element::zero(2), 1e-12);
    EXPECT_LE((zero.inverse - Element({0.5, 0.0})).max_abs(), 1e-15);

    const NeumannSeries t = neumann_inverse(t2(), NormKind::CoordinateL1, 2.0, t2().basis(1), 1e-12);
    EXPECT_LE((t.inverse - Element({0.5, 0.25})).max_abs(), 1e-15);
    EXPECT_LE((multiply(t2(), Element({2.0, -1.0}), t.inverse) - t2().identity()).max_abs(), 1e-15);

    const Algebra fn3 = function_algebra(3);
    const Element x{0.9, -0.5i, 0.3};
    const NeumannSeries s = neumann_inverse(fn3, NormKind::Sup, 1.0, x, 1e-12);
    EXPECT_LE((s.inverse - *invert(fn3, fn3.identity() - x)).max_abs(), 1e-8);
    EXPECT_LE(s.residual, 1e-12);
}

TEST(Neumann, PreconditionEnforced) {
    EXPECT_THROW(neumann_inverse(t2(), NormKind::CoordinateL1, 1.0, {0.5, 0.5}, 1e-9), PreconditionViolated);
    EXPECT_THROW(neumann_inverse(t2(), NormKind::CoordinateL1, 2.0, t2().basis(1), 0.0), InvalidArgument);
}

TEST(Neumann, AgreesWithDirectInversion) {
    std::mt19937_64 rng(61);
    for (const auto& entry : algebra_catalog()) {
        const Algebra& a = entry.algebra;
        for (NormKind kind : algebra_norms(a)) {
            for (int t = 0; t < 20; ++t) {
                Element x = random_element(a, rng);
                const double nx = norm(kind, a, x);
                if (nx == 0.0) continue;
                const double ratio = 0.05 + 0.85 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                const Scalar lambda = std::polar(nx / ratio, std::uniform_real_distribution<double>(0.0, 6.28)(rng));
                const double tol = 1e-9;
                const NeumannSeries ns = neumann_inverse(a, kind, lambda, x, tol);
                EXPECT_LE(ns.residual, tol) << entry.name;
                const auto direct = invert(a, lambda * a.identity() - x);
                ASSERT_TRUE(direct.has_value()) << entry.name;
                EXPECT_LE((ns.inverse - *direct).max_abs(), 1e-7) << entry.name;
            }
        }
    }
}

TEST(SpectralBounds, Examples) {
    std::mt19937_64 rng(67);
    const Algebra fn4 = function_algebra(4);
    for (int t = 0; t < 50; ++t) {
        const SpectralBoundReport r = verify_spectral_bounds(fn4, NormKind::Sup, random_element(fn4, rng));
        EXPECT_TRUE(r.passed);
        EXPECT_NEAR(r.norm, r.spectral_radius, 1e-10);
    }
    const SpectralBoundReport gap = verify_spectral_bounds(t2(), NormKind::CoordinateL1, t2().basis(1));
    EXPECT_TRUE(gap.passed);
    EXPECT_NEAR(gap.spectral_radius, 0.0, 1e-14);
    EXPECT_EQ(gap.norm, 1.0);
}

TEST(SpectralBounds, HoldForEveryApplicableNorm) {
    std::mt19937_64 rng(71);
    for (const auto& entry : algebra_catalog()) {
        const Algebra& a = entry.algebra;
        const auto chars = characters(a);
        for (NormKind kind : algebra_norms(a)) {
            for (int t = 0; t < 25; ++t) {
                const Element x = random_element(a, rng);
                const SpectralBoundReport r = verify_spectral_bounds(a, kind, x, chars);
                EXPECT_LE(r.spectral_radius, r.norm + 1e-8) << entry.name;
                EXPECT_TRUE(r.passed) << entry.name;
            }
        }
    }
}

TEST(SpectralBounds, SupNormEqualsSpectralRadiusOnFunctionAlgebras) {
    std::mt19937_64 rng(73);
    for (std::size_t n = 1; n <= 6; ++n) {
        const Algebra a = function_algebra(n);
        for (int t = 0; t < 100; ++t) {
            const Element f = random_element(a, rng);
            EXPECT_NEAR(norm(NormKind::Sup, a, f), spectral_radius(a, f), 1e-10);
        }
    }
}
