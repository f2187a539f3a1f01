#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace fdalg {

/// Coordinates of an algebra element in the algebra's basis.
class Element {
public:
    Element() = default;
    explicit Element(Vector coords) : coords_(std::move(coords)) { require_finite(coords_, "Element"); }
    Element(std::initializer_list<Scalar> coords) : coords_(coords) { require_finite(coords_, "Element"); }

    static Element zero(std::size_t dim) { return Element(Vector(dim)); }
    static Element basis(std::size_t dim, std::size_t i) {
        Vector v(dim);
        v.at(i) = 1.0;
        return Element(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] const Vector& coords() const { return coords_; }
    Scalar operator[](std::size_t i) const { return coords_[i]; }

    friend Element operator+(const Element& a, const Element& b) {
        require_same_dim(a, b);
        Vector v(a.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Element(std::move(v));
    }
    friend Element operator-(const Element& a, const Element& b) {
        require_same_dim(a, b);
        Vector v(a.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
        return Element(std::move(v));
    }
    friend Element operator*(Scalar s, const Element& a) {
        Vector v(a.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
        return Element(std::move(v));
    }

    /// Max-norm of the coordinate vector.
    [[nodiscard]] double max_abs() const { return fdalg::max_abs(coords_); }

    friend bool operator==(const Element&, const Element&) = default;

private:
    static void require_same_dim(const Element& a, const Element& b) {
        if (a.dim() != b.dim()) throw DimensionMismatch("Element dimensions differ");
    }

    Vector coords_;
};

/// Provenance markers that unlock family-specific operations (e.g. the sup norm).
struct AlgebraTags {
    bool function_algebra = false;
    bool semigroup_algebra = false;
    friend bool operator==(const AlgebraTags&, const AlgebraTags&) = default;
};

/// A finite-dimensional commutative complex algebra with identity, given by
/// structure constants: b_i * b_j = sum_k c(i, j, k) b_k.
///
/// The constructor checks shapes and finiteness only; the algebra axioms are
/// checked by validate_algebra.
class Algebra {
public:
    Algebra(std::size_t dim, Vector structure_constants, Vector identity,
            std::vector<std::string> basis_names = {}, AlgebraTags tags = {})
        : dim_(dim), c_(std::move(structure_constants)), identity_(std::move(identity)),
          names_(std::move(basis_names)), tags_(tags) {
        if (dim_ == 0) throw InvalidArgument("Algebra: dimension must be positive");
        if (c_.size() != dim_ * dim_ * dim_) throw DimensionMismatch("Algebra: structure constants need dim^3 entries");
        if (identity_.size() != dim_) throw DimensionMismatch("Algebra: identity length differs from dim");
        require_finite(c_, "Algebra structure constants");
        require_finite(identity_, "Algebra identity");
        if (names_.empty()) {
            for (std::size_t i = 0; i < dim_; ++i) names_.push_back("b" + std::to_string(i));
        }
        if (names_.size() != dim_) throw DimensionMismatch("Algebra: basis_names length differs from dim");
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] Scalar c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    [[nodiscard]] const Vector& structure_constants() const { return c_; }
    [[nodiscard]] Element identity() const { return Element(identity_); }
    [[nodiscard]] const std::vector<std::string>& basis_names() const { return names_; }
    [[nodiscard]] const AlgebraTags& tags() const { return tags_; }
    [[nodiscard]] Element basis(std::size_t i) const { return Element::basis(dim_, i); }

    void require_member(const Element& x) const {
        if (x.dim() != dim_) {
            throw DimensionMismatch("element of length " + std::to_string(x.dim()) +
                                    " does not belong to an algebra of dimension " + std::to_string(dim_));
        }
    }

    friend bool operator==(const Algebra& x, const Algebra& y) {
        return x.dim_ == y.dim_ && x.c_ == y.c_ && x.identity_ == y.identity_ && x.names_ == y.names_ &&
               x.tags_ == y.tags_;
    }

    /// Memo for bases derived from the structure constants, shared by copies.
    /// Keyed by the rank tolerance that produced each entry.
    [[nodiscard]] Matrix cached(double key, Matrix (*compute)(const Algebra&, double)) const {
        {
            const std::lock_guard lock(cache_->mutex);
            for (const auto& [k, m] : cache_->entries)
                if (k == key) return m;
        }
        Matrix m = compute(*this, key);
        const std::lock_guard lock(cache_->mutex);
        cache_->entries.emplace_back(key, m);
        return m;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::vector<std::pair<double, Matrix>> entries;
    };

    std::size_t dim_;
    Vector c_;
    Vector identity_;
    std::vector<std::string> names_;
    AlgebraTags tags_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// ---------------------------------------------------------------------------
// Validation

/// Worst violation of one axiom, with the indices where it occurs.
struct AxiomCheck {
    std::string axiom;
    double max_violation = 0.0;
    std::vector<std::size_t> indices;
    bool passed = true;
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;

    [[nodiscard]] bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    [[nodiscard]] const AxiomCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }

    [[nodiscard]] std::string describe_first_failure() const {
        const AxiomCheck* f = first_failure();
        if (f == nullptr) return "valid";
        std::ostringstream os;
        os << f->axiom << " violated at (";
        for (std::size_t i = 0; i < f->indices.size(); ++i) os << (i ? "," : "") << f->indices[i];
        os << "), magnitude " << f->max_violation;
        return os.str();
    }
};

inline Element multiply(const Algebra& a, const Element& x, const Element& y);

/// Checks commutativity, associativity, the identity law and e != 0 entrywise.
inline ValidationReport validate_algebra(const Algebra& a, const Tolerances& tol = default_tolerances()) {
    const std::size_t n = a.dim();
    ValidationReport report;

    AxiomCheck comm{"commutativity", 0.0, {}, true};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double v = std::abs(a.c(i, j, k) - a.c(j, i, k));
                if (v > comm.max_violation) {
                    comm.max_violation = v;
                    comm.indices = {i, j, k};
                }
            }
    comm.passed = comm.max_violation <= tol.axiom;
    report.checks.push_back(comm);

    // (b_i b_j) b_k = b_i (b_j b_k), compared coefficient by coefficient.
    AxiomCheck assoc{"associativity", 0.0, {}, true};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Scalar lhs{}, rhs{};
                    for (std::size_t m = 0; m < n; ++m) {
                        lhs += a.c(i, j, m) * a.c(m, k, l);
                        rhs += a.c(j, k, m) * a.c(i, m, l);
                    }
                    const double v = std::abs(lhs - rhs);
                    if (v > assoc.max_violation) {
                        assoc.max_violation = v;
                        assoc.indices = {i, j, k, l};
                    }
                }
    assoc.passed = assoc.max_violation <= tol.axiom;
    report.checks.push_back(assoc);

    AxiomCheck unit{"identity_law", 0.0, {}, true};
    const Element e = a.identity();
    for (std::size_t j = 0; j < n; ++j) {
        const Element p = multiply(a, e, a.basis(j));
        for (std::size_t k = 0; k < n; ++k) {
            const double v = std::abs(p[k] - (j == k ? 1.0 : 0.0));
            if (v > unit.max_violation) {
                unit.max_violation = v;
                unit.indices = {j, k};
            }
        }
    }
    unit.passed = unit.max_violation <= tol.axiom;
    report.checks.push_back(unit);

    AxiomCheck nonzero{"identity_nonzero", 0.0, {}, true};
    if (e.max_abs() == 0.0) {
        nonzero.max_violation = 1.0;
        nonzero.passed = false;
    }
    report.checks.push_back(nonzero);
    return report;
}

// ---------------------------------------------------------------------------
// Arithmetic

inline Element multiply(const Algebra& a, const Element& x, const Element& y) {
    a.require_member(x);
    a.require_member(y);
    const std::size_t n = a.dim();
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == Scalar{}) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar xy = x[i] * y[j];
            if (xy == Scalar{}) continue;
            for (std::size_t k = 0; k < n; ++k) r[k] += xy * a.c(i, j, k);
        }
    }
    return Element(std::move(r));
}

/// Matrix of y -> x*y in the algebra's basis.
inline Matrix regular_representation(const Algebra& a, const Element& x) {
    a.require_member(x);
    const std::size_t n = a.dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == Scalar{}) continue;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * a.c(i, j, k);
    }
    return m;
}

/// Orthonormal basis of the nilpotent elements: the kernel of the trace form
/// (x, y) -> tr(M_{xy}); over C an element is nilpotent iff it pairs to zero
/// with everything.
inline Matrix radical_basis(const Algebra& a, const Tolerances& tol = default_tolerances()) {
    const std::size_t n = a.dim();
    std::vector<Matrix> ops;
    ops.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ops.push_back(regular_representation(a, a.basis(i)));
    Matrix form(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Scalar t{};
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t m = 0; m < n; ++m) t += ops[i](k, m) * ops[j](m, k);
            form(i, j) = form(j, i) = t;
        }
    return nullspace(form, tol);
}

/// x^-1, or nullopt when x is not invertible.
///
/// x is a unit iff its image in A/rad is, and there the regular
/// representation is diagonalizable, so a relative rank test on it measures
/// min |phi(x)|. On A itself it would not: x0 e + n with n nilpotent of index
/// k has smallest singular value near |x0|^k. The rank test runs on Q^H M_x Q
/// with Q an orthonormal complement of the radical (rad is an ideal, so this
/// block is the action on the quotient); the inverse then comes from M_x
/// directly and must satisfy ‖x y - e‖∞ <= tol.solve.
inline std::optional<Element> invert(const Algebra& a, const Element& x, const Tolerances& tol = default_tolerances()) {
    a.require_member(x);
    const Matrix m = regular_representation(a, x);
    const Matrix q = a.cached(tol.rank, [](const Algebra& alg, double rank_tol) {
        Tolerances t;
        t.rank = rank_tol;
        const Matrix rad = radical_basis(alg, t);
        return rad.cols() == 0 ? Matrix::identity(alg.dim()) : nullspace(rad.adjoint(), t);
    });
    const Matrix reduced = q.adjoint() * m * q;
    if (lu_decompose(reduced, tol).rank < reduced.rows()) return std::nullopt;

    Tolerances exact = tol;
    exact.rank = 0.0;
    auto y = solve(m, a.identity().coords(), exact);
    if (!y) return std::nullopt;
    Element inv(std::move(*y));
    const double residual = (multiply(a, x, inv) - a.identity()).max_abs();
    if (!(residual <= tol.solve)) return std::nullopt;
    return inv;
}

/// Integer power by repeated squaring; x^0 = e.
inline Element power(const Algebra& a, const Element& x, unsigned exponent) {
    Element result = a.identity();
    Element base = x;
    while (exponent > 0) {
        if (exponent & 1u) result = multiply(a, result, base);
        exponent >>= 1u;
        if (exponent > 0) base = multiply(a, base, base);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Constructors for the two example families and the polynomial test family

/// Complex-valued functions on n points with pointwise multiplication.
inline Algebra function_algebra(std::size_t n) {
    if (n == 0) throw InvalidArgument("function_algebra: need at least one point");
    Vector c(n * n * n);
    for (std::size_t i = 0; i < n; ++i) c[(i * n + i) * n + i] = 1.0;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    return Algebra(n, std::move(c), Vector(n, 1.0), std::move(names), AlgebraTags{true, false});
}

/// C[t]/(p) for a monic p, in the basis 1, t, ..., t^(d-1).
/// `coefficients` are in ascending order: p = a_0 + a_1 t + ... + a_d t^d with a_d = 1.
inline Algebra polynomial_quotient_algebra(const Vector& coefficients) {
    require_finite(coefficients, "polynomial_quotient_algebra");
    if (coefficients.size() < 2) throw InvalidArgument("polynomial_quotient_algebra: degree must be at least 1");
    if (coefficients.back() != Scalar(1.0)) throw InvalidArgument("polynomial_quotient_algebra: polynomial is not monic");
    const std::size_t d = coefficients.size() - 1;

    // reduced[m] = coordinates of t^m mod p, for m < 2d - 1.
    std::vector<Vector> reduced;
    for (std::size_t m = 0; m + 1 < 2 * d; ++m) {
        Vector v(d);
        if (m < d) {
            v[m] = 1.0;
        } else {
            const Vector& prev = reduced[m - 1];
            // t * prev, then substitute t^d = -sum a_k t^k.
            const Scalar top = prev[d - 1];
            for (std::size_t k = d - 1; k > 0; --k) v[k] = prev[k - 1];
            v[0] = 0.0;
            for (std::size_t k = 0; k < d; ++k) v[k] -= top * coefficients[k];
        }
        reduced.push_back(std::move(v));
    }

    Vector c(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = reduced[i + j][k];
    Vector identity(d);
    identity[0] = 1.0;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
    return Algebra(d, std::move(c), std::move(identity), std::move(names));
}

// ---------------------------------------------------------------------------
// Random elements

/// A coordinate drawn uniformly from the closed unit disc.
inline Scalar random_unit_disc(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double theta = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, theta);
}

inline Element random_element(const Algebra& a, std::mt19937_64& rng) {
    Vector v(a.dim());
    for (Scalar& z : v) z = random_unit_disc(rng);
    return Element(std::move(v));
}

} // namespace fdalg
