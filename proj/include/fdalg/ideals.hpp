#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace fdalg {

/// A subspace of an algebra, stored as a matrix with orthonormal columns.
///
/// Construction only orthonormalizes; closure under multiplication is
/// checked by is_ideal (and enforced by the operations that produce Ideals).
class Ideal {
public:
    /// Orthonormalizes the column span of `spanning` (parent_dim rows).
    static Ideal spanned_by(std::size_t parent_dim, const Matrix& spanning,
                            const Tolerances& tol = default_tolerances()) {
        if (spanning.cols() != 0 && spanning.rows() != parent_dim) {
            throw DimensionMismatch("Ideal: basis rows differ from parent dimension");
        }
        if (spanning.cols() == 0) return Ideal(parent_dim, Matrix(parent_dim, 0));
        return Ideal(parent_dim, column_space(spanning, tol));
    }

    static Ideal zero(std::size_t parent_dim) { return Ideal(parent_dim, Matrix(parent_dim, 0)); }
    static Ideal whole(std::size_t parent_dim) { return Ideal(parent_dim, Matrix::identity(parent_dim)); }

    [[nodiscard]] std::size_t dim() const { return basis_.cols(); }
    [[nodiscard]] std::size_t parent_dim() const { return parent_dim_; }
    [[nodiscard]] const Matrix& basis() const { return basis_; }

    [[nodiscard]] double residual(std::span<const Scalar> v) const { return projection_residual(basis_, v); }

    [[nodiscard]] bool contains(std::span<const Scalar> v, const Tolerances& tol = default_tolerances()) const {
        return residual(v) <= tol.ideal * std::max(1.0, norm2(v));
    }

    /// Largest residual of `other`'s basis columns against this subspace.
    [[nodiscard]] double containment_residual(const Ideal& other) const {
        double worst = 0.0;
        for (std::size_t j = 0; j < other.dim(); ++j) worst = std::max(worst, residual(other.basis_.column(j)));
        return worst;
    }

    [[nodiscard]] bool contains(const Ideal& other, const Tolerances& tol = default_tolerances()) const {
        return other.parent_dim_ == parent_dim_ && containment_residual(other) <= tol.ideal;
    }

    [[nodiscard]] bool same_subspace(const Ideal& other, const Tolerances& tol = default_tolerances()) const {
        return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
    }

private:
    Ideal(std::size_t parent_dim, Matrix basis) : basis_(std::move(basis)), parent_dim_(parent_dim) {}

    Matrix basis_;
    std::size_t parent_dim_;
};

struct IdealCheck {
    bool is_ideal = true;
    double max_violation = 0.0;
};

/// Tests a x in span(S) for every basis vector a and every column x of S.
/// Throws RankDeficient if the columns of S are dependent.
inline IdealCheck is_ideal(const Algebra& a, const Matrix& subspace, const Tolerances& tol = default_tolerances()) {
    const std::size_t n = a.dim();
    if (subspace.cols() == 0) return {};
    if (subspace.rows() != n) throw DimensionMismatch("is_ideal: subspace rows differ from algebra dimension");
    if (matrix_rank(subspace, tol) < subspace.cols()) throw RankDeficient("is_ideal: subspace columns are dependent");
    const Matrix q = column_space(subspace, tol);

    IdealCheck out;
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix mi = regular_representation(a, a.basis(i));
        for (std::size_t j = 0; j < q.cols(); ++j) {
            const Vector prod = mi * q.column(j);
            const double r = projection_residual(q, prod) / std::max(1.0, norm2(prod));
            out.max_violation = std::max(out.max_violation, r);
        }
    }
    out.is_ideal = out.max_violation <= tol.ideal;
    return out;
}

inline IdealCheck is_ideal(const Algebra& a, const Ideal& ideal, const Tolerances& tol = default_tolerances()) {
    return is_ideal(a, ideal.basis(), tol);
}

/// I(x) = { a x : a in A }, the column space of the regular representation of x.
///
/// An ideal is everything exactly when it holds e, so that decides first:
/// e = a x for some a is the verified solve in invert(). Otherwise the
/// numerical column space is returned, minus its weakest direction if the
/// rank threshold alone would have called it full.
inline Ideal principal_ideal(const Algebra& a, const Element& x, const Tolerances& tol = default_tolerances()) {
    if (invert(a, x, tol)) return Ideal::whole(a.dim());
    const Matrix span = column_space(regular_representation(a, x), tol);
    if (span.cols() < a.dim()) return Ideal::spanned_by(a.dim(), span, tol);
    std::vector<Vector> kept;
    for (std::size_t c = 0; c + 1 < span.cols(); ++c) kept.push_back(span.column(c));
    return Ideal::spanned_by(a.dim(), Matrix::from_columns(a.dim(), kept), tol);
}

inline bool is_proper(const Algebra& a, const Ideal& ideal) { return ideal.dim() < a.dim(); }

/// Sum I + J (span of both bases).
inline Ideal ideal_sum(const Ideal& i, const Ideal& j, const Tolerances& tol = default_tolerances()) {
    if (i.parent_dim() != j.parent_dim()) throw DimensionMismatch("ideal_sum: different parent algebras");
    return Ideal::spanned_by(i.parent_dim(), Matrix::hcat(i.basis(), j.basis()), tol);
}

/// Intersection I cap J, from the nullspace of [Q_I | -Q_J].
inline Ideal ideal_intersection(const Ideal& i, const Ideal& j, const Tolerances& tol = default_tolerances()) {
    if (i.parent_dim() != j.parent_dim()) throw DimensionMismatch("ideal_intersection: different parent algebras");
    if (i.dim() == 0 || j.dim() == 0) return Ideal::zero(i.parent_dim());
    const Matrix stacked = Matrix::hcat(i.basis(), Scalar(-1.0) * j.basis());
    const Matrix kernel = nullspace(stacked, tol);
    Matrix vectors(i.parent_dim(), kernel.cols());
    for (std::size_t c = 0; c < kernel.cols(); ++c)
        for (std::size_t r = 0; r < i.parent_dim(); ++r) {
            Scalar s{};
            for (std::size_t k = 0; k < i.dim(); ++k) s += i.basis()(r, k) * kernel(k, c);
            vectors(r, c) = s;
        }
    return Ideal::spanned_by(i.parent_dim(), vectors, tol);
}

// ---------------------------------------------------------------------------
// Quotients

/// A / I together with the quotient map and a right inverse of it.
struct QuotientResult {
    Algebra quotient;
    Matrix projection; // (dim A - dim I) x dim A, kernel = I
    Matrix section;    // dim A x (dim A - dim I), orthonormal complement of I

    [[nodiscard]] Element project(const Element& x) const { return Element(projection * x.coords()); }
    [[nodiscard]] Element lift(const Element& y) const { return Element(section * y.coords()); }
};

/// Builds the quotient algebra. The section is the orthonormal complement of I
/// and the projection its adjoint, so projection * section = identity.
/// Throws NotProper or NotAnIdeal.
inline QuotientResult quotient(const Algebra& a, const Ideal& ideal, const Tolerances& tol = default_tolerances()) {
    const std::size_t n = a.dim();
    if (ideal.parent_dim() != n) throw DimensionMismatch("quotient: ideal belongs to a different algebra");
    if (!is_proper(a, ideal)) throw NotProper("quotient: ideal is the whole algebra");
    if (const IdealCheck chk = is_ideal(a, ideal, tol); !chk.is_ideal) {
        throw NotAnIdeal("quotient: subspace is not closed under multiplication (violation " +
                         std::to_string(chk.max_violation) + ")");
    }

    Matrix section = ideal.dim() == 0 ? Matrix::identity(n) : nullspace(ideal.basis().adjoint(), tol);
    if (section.cols() + ideal.dim() != n) {
        throw RankDeficient("quotient: complement dimension does not match");
    }
    Matrix projection = section.adjoint();
    const std::size_t q = section.cols();

    std::vector<Element> lifted;
    lifted.reserve(q);
    for (std::size_t i = 0; i < q; ++i) lifted.emplace_back(section.column(i));

    Vector c(q * q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i; j < q; ++j) {
            const Vector img = projection * multiply(a, lifted[i], lifted[j]).coords();
            for (std::size_t k = 0; k < q; ++k) {
                c[(i * q + j) * q + k] = img[k];
                c[(j * q + i) * q + k] = img[k];
            }
        }
    Vector identity = projection * a.identity().coords();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < q; ++i) names.push_back("q" + std::to_string(i));
    return QuotientResult{Algebra(q, std::move(c), std::move(identity), std::move(names)), std::move(projection),
                          std::move(section)};
}

// ---------------------------------------------------------------------------
// Function algebras: ideals <-> subsets of points

inline void require_function_algebra(const Algebra& a, const char* who) {
    if (!a.tags().function_algebra) throw InvalidArgument(std::string(who) + ": not a function algebra");
}

/// Functions vanishing on every point of E.
inline Ideal vanishing_ideal(const Algebra& a, const std::set<std::size_t>& points) {
    require_function_algebra(a, "vanishing_ideal");
    const std::size_t n = a.dim();
    for (std::size_t p : points)
        if (p >= n) throw InvalidArgument("vanishing_ideal: point index out of range");
    std::vector<Vector> cols;
    for (std::size_t p = 0; p < n; ++p)
        if (!points.contains(p)) cols.push_back(a.basis(p).coords());
    return Ideal::spanned_by(n, Matrix::from_columns(n, cols));
}

/// The subset E with vanishing_ideal(E) = I. Throws NotASubsetIdeal when the
/// subspace is not of that form.
inline std::set<std::size_t> ideal_to_subset(const Algebra& a, const Ideal& ideal,
                                             const Tolerances& tol = default_tolerances()) {
    require_function_algebra(a, "ideal_to_subset");
    std::set<std::size_t> points;
    for (std::size_t p = 0; p < a.dim(); ++p) {
        double m = 0.0;
        for (std::size_t j = 0; j < ideal.dim(); ++j) m = std::max(m, std::abs(ideal.basis()(p, j)));
        if (m <= tol.ideal) points.insert(p);
    }
    if (!vanishing_ideal(a, points).same_subspace(ideal, tol)) {
        throw NotASubsetIdeal("ideal_to_subset: subspace is not the vanishing ideal of any subset");
    }
    return points;
}

} // namespace fdalg
