#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fdalg/fdalg.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace fdalg;
using namespace std::complex_literals;
using fdalg::testing::algebra_catalog;
using fdalg::testing::max_diff;

namespace {

const Algebra& t2() {
    static const Algebra a = polynomial_quotient_algebra(Vector{0.0, 0.0, 1.0});
    return a;
}

double coordinate_l1(const Element& x) {
    double s = 0.0;
    for (Scalar z : x.coords()) s += std::abs(z);
    return s;
}

} // namespace

TEST(ValidateAlgebra, FunctionAlgebraPassesExactly) {
    const ValidationReport r = validate_algebra(function_algebra(3));
    EXPECT_TRUE(r.passed());
    for (const auto& c : r.checks) EXPECT_EQ(c.max_violation, 0.0) << c.axiom;
}

TEST(ValidateAlgebra, AsymmetricTensorIsFlagged) {
    const Algebra fn = function_algebra(2);
    Vector c = fn.structure_constants();
    c[(0 * 2 + 1) * 2 + 0] = 0.5; // b0 b1 gets a component, b1 b0 does not
    const ValidationReport r = validate_algebra(Algebra(2, c, fn.identity().coords()));
    ASSERT_NE(r.first_failure(), nullptr);
    EXPECT_EQ(r.first_failure()->axiom, "commutativity");
    EXPECT_EQ(r.first_failure()->indices, (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_NEAR(r.first_failure()->max_violation, 0.5, 1e-15);
}

TEST(ValidateAlgebra, CyclicGroupAlgebraBruteForce) {
    const Algebra a = semigroup_algebra(cyclic_group(4));
    EXPECT_TRUE(validate_algebra(a).passed());
    // Independent quadruple check straight from the tensor.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    Scalar lhs = 0.0, rhs = 0.0;
                    for (std::size_t m = 0; m < 4; ++m) {
                        lhs += a.c(i, j, m) * a.c(m, k, l);
                        rhs += a.c(j, k, m) * a.c(i, m, l);
                    }
                    EXPECT_EQ(lhs, rhs);
                }
}

TEST(ValidateAlgebra, MissingIdentityIsFlagged) {
    const Algebra fn = function_algebra(2);
    const ValidationReport r = validate_algebra(Algebra(2, fn.structure_constants(), Vector{1.0, 0.0}));
    ASSERT_NE(r.first_failure(), nullptr);
    EXPECT_EQ(r.first_failure()->axiom, "identity_law");
}

TEST(Algebra, ConstructorRejectsBadShapes) {
    EXPECT_THROW(Algebra(0, Vector{}, Vector{}), InvalidArgument);
    EXPECT_THROW(Algebra(2, Vector(7), Vector(2)), DimensionMismatch);
    EXPECT_THROW(Algebra(1, Vector{1.0}, Vector{std::nan("")}), InvalidArgument);
}

TEST(Multiply, Examples) {
    const Algebra fn = function_algebra(2);
    EXPECT_EQ(multiply(fn, {2.0, 3.0}, {5.0, 7.0}), Element({10.0, 21.0}));
    EXPECT_EQ(multiply(t2(), t2().basis(1), t2().basis(1)), Element::zero(2));
    const Algebra z2 = semigroup_algebra(cyclic_group(2));
    EXPECT_EQ(multiply(z2, z2.basis(1), z2.basis(1)), z2.basis(0));
    EXPECT_THROW(multiply(fn, {1.0}, {1.0, 2.0}), DimensionMismatch);
}

TEST(RegularRepresentation, Examples) {
    for (const auto& entry : algebra_catalog()) {
        const Matrix m = regular_representation(entry.algebra, entry.algebra.identity());
        EXPECT_LE(max_diff(m.entries(), Matrix::identity(entry.algebra.dim()).entries()), 1e-12) << entry.name;
    }
    EXPECT_EQ(regular_representation(t2(), t2().basis(1)), (Matrix{{0.0, 0.0}, {1.0, 0.0}}));
    const Algebra z2 = semigroup_algebra(cyclic_group(2));
    EXPECT_EQ(regular_representation(z2, z2.basis(1)), (Matrix{{0.0, 1.0}, {1.0, 0.0}}));
}

TEST(Invert, Examples) {
    EXPECT_EQ(*invert(t2(), t2().identity()), t2().identity());
    EXPECT_FALSE(invert(t2(), t2().basis(1)).has_value());
    const auto y = invert(t2(), {1.0, -1.0});
    ASSERT_TRUE(y.has_value());
    EXPECT_LE((*y - Element({1.0, 1.0})).max_abs(), 1e-15);
    EXPECT_LE((multiply(t2(), {1.0, -1.0}, *y) - t2().identity()).max_abs(), 1e-15);
}

// x0 e + t in C[t]/(t^5): a unit whose regular representation has smallest
// singular value about x0^5, under the relative rank threshold.
TEST(Invert, UnitNearTheNilradical) {
    const Algebra a = polynomial_quotient_algebra(Vector{0, 0, 0, 0, 0, 1});
    const double x0 = 0.01;
    const Element x{x0, 1.0, 0.0, 0.0, 0.0};
    Element expected = Element::zero(5);
    for (std::size_t j = 0; j < 5; ++j) expected = expected + (std::pow(-1.0, j) / std::pow(x0, j + 1)) * a.basis(j);
    const auto y = invert(a, x);
    ASSERT_TRUE(y.has_value());
    EXPECT_LE((*y - expected).max_abs() / expected.max_abs(), 1e-12);
    EXPECT_LE((multiply(a, x, *y) - a.identity()).max_abs(), 1e-8);
    EXPECT_FALSE(invert(a, x - x0 * a.identity()).has_value());
}

TEST(FunctionAlgebra, Examples) {
    const Algebra c = function_algebra(1);
    EXPECT_EQ(c.c(0, 0, 0), Scalar(1.0));
    const Algebra fn2 = function_algebra(2);
    EXPECT_TRUE(validate_algebra(fn2).passed());
    EXPECT_EQ(multiply(fn2, {1.0, 0.0}, {0.0, 1.0}), Element::zero(2));
    EXPECT_THROW(function_algebra(0), InvalidArgument);
}

TEST(PolynomialQuotient, Examples) {
    const Algebra a = polynomial_quotient_algebra(Vector{-1.0, 0.0, 1.0});
    EXPECT_EQ(multiply(a, a.basis(1), a.basis(1)), a.identity());
    EXPECT_THROW(polynomial_quotient_algebra(Vector{1.0, 2.0}), InvalidArgument); // not monic
    EXPECT_THROW(polynomial_quotient_algebra(Vector{1.0}), InvalidArgument);      // degree 0
}

TEST(Power, MatchesRepeatedProduct) {
    const Algebra a = polynomial_quotient_algebra(Vector{0.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(power(a, a.basis(1), 0), a.identity());
    EXPECT_EQ(power(a, a.basis(1), 2), a.basis(2));
    EXPECT_EQ(power(a, a.basis(1), 3), Element::zero(3));
}

// Properties over the whole catalog -------------------------------------------------------------

TEST(AlgebraProperties, CatalogValidates) {
    for (const auto& entry : algebra_catalog()) {
        const ValidationReport r = validate_algebra(entry.algebra);
        EXPECT_TRUE(r.passed()) << entry.name << ": " << r.describe_first_failure();
    }
}

TEST(AlgebraProperties, MultiplyIsCommutativeAndAssociative) {
    std::mt19937_64 rng(101);
    for (const auto& entry : algebra_catalog()) {
        const Algebra& a = entry.algebra;
        for (int t = 0; t < 500; ++t) {
            const Element x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
            ASSERT_LE((multiply(a, x, y) - multiply(a, y, x)).max_abs(), 1e-12) << entry.name;
            const double bound = 1e-9 * coordinate_l1(x) * coordinate_l1(y) * coordinate_l1(z);
            ASSERT_LE((multiply(a, multiply(a, x, y), z) - multiply(a, x, multiply(a, y, z))).max_abs(),
                      std::max(bound, 1e-15))
                << entry.name;
        }
    }
}

TEST(AlgebraProperties, RegularRepresentationIsHomomorphism) {
    std::mt19937_64 rng(103);
    for (const auto& entry : algebra_catalog()) {
        const Algebra& a = entry.algebra;
        for (int t = 0; t < 100; ++t) {
            const Element x = random_element(a, rng), y = random_element(a, rng);
            const Matrix lhs = regular_representation(a, multiply(a, x, y));
            const Matrix rhs = regular_representation(a, x) * regular_representation(a, y);
            ASSERT_LE(max_diff(lhs.entries(), rhs.entries()), 1e-9) << entry.name;
        }
    }
}

TEST(AlgebraProperties, InvertSucceedsIffEigenvaluesAreNonzero) {
    std::mt19937_64 rng(107);
    for (const auto& entry : algebra_catalog()) {
        const Algebra& a = entry.algebra;
        for (int t = 0; t < 60; ++t) {
            Element x = random_element(a, rng);
            // Every other sample is pushed onto the spectrum so both outcomes occur.
            if (t % 2 == 1) {
                const Spectrum s = spectrum(a, x);
                x = x - s.values[rng() % s.values.size()] * a.identity();
            }
            // Defective clusters spread single eigenvalues to about eps^(1/k); their means stay accurate.
            double smallest = std::numeric_limits<double>::infinity();
            for (Scalar z : spectrum(a, x).values) smallest = std::min(smallest, std::abs(z));
            const auto inv = invert(a, x);
            ASSERT_EQ(inv.has_value(), smallest > 1e-8) << entry.name << " smallest " << smallest;
            if (t % 2 == 1) {
                ASSERT_FALSE(inv.has_value()) << entry.name;
            }
            if (inv) {
                ASSERT_LE((multiply(a, x, *inv) - a.identity()).max_abs(), 1e-8) << entry.name;
            }
        }
    }
}
