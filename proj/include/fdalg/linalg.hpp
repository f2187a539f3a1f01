#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace fdalg {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(std::span<const Scalar> values, const char* what) {
    for (Scalar z : values) {
        if (!is_finite(z)) {
            throw InvalidArgument(std::string(what) + ": non-finite scalar");
        }
    }
}

inline double max_abs(std::span<const Scalar> v) {
    double m = 0.0;
    for (Scalar z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double norm2(std::span<const Scalar> v) {
    double s = 0.0;
    for (Scalar z : v) s += std::norm(z);
    return std::sqrt(s);
}

/// Hermitian inner product, conjugate-linear in the first argument.
inline Scalar dot_conj(std::span<const Scalar> a, std::span<const Scalar> b) {
    Scalar s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Bilinear pairing sum a_i b_i (how a functional acts on coordinates).
inline Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
    Scalar s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, Vector entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionMismatch("Matrix: entry count does not equal rows*cols");
        }
        require_finite(data_, "Matrix");
    }
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        require_finite(data_, "Matrix");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const Scalar> d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw DimensionMismatch("Matrix::from_columns: column length");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }
    [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Scalar> entries() const { return data_; }

    [[nodiscard]] Vector column(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    [[nodiscard]] Vector row(std::size_t i) const {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    [[nodiscard]] std::vector<Vector> columns() const {
        std::vector<Vector> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
        return out;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] Matrix adjoint() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    [[nodiscard]] double max_abs() const { return fdalg::max_abs(data_); }

    [[nodiscard]] double frobenius() const { return norm2(data_); }

    [[nodiscard]] Scalar trace() const {
        Scalar s{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("Matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar aik = a(i, k);
                if (aik == Scalar{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector operator*(const Matrix& a, std::span<const Scalar> x) {
        if (a.cols_ != x.size()) throw DimensionMismatch("Matrix-vector product: length differs");
        Vector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            Scalar s{};
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(Scalar s, Matrix a) {
        for (Scalar& z : a.data_) z *= s;
        return a;
    }

    /// M - lambda I.
    [[nodiscard]] Matrix shifted(Scalar lambda) const {
        Matrix m = *this;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m(i, i) -= lambda;
        return m;
    }

    /// Horizontal concatenation [a | b].
    [[nodiscard]] static Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ && !a.empty() && !b.empty()) throw DimensionMismatch("hcat: row counts differ");
        const std::size_t rows = a.cols_ == 0 ? b.rows_ : a.rows_;
        Matrix m(rows, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void require_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("Matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

// ---------------------------------------------------------------------------
// LU with complete pivoting

/// PAQ = LU factorization with complete pivoting, stored compactly.
struct LuDecomposition {
    Matrix lu;
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    std::size_t rank = 0;
    int sign = 1;
    double scale = 0.0; // max |entry| of the input
};

inline LuDecomposition lu_decompose(const Matrix& m, const Tolerances& tol = default_tolerances()) {
    if (!m.square()) throw DimensionMismatch("lu_decompose: matrix not square");
    const std::size_t n = m.rows();
    LuDecomposition d{m, {}, {}, 0, 1, m.max_abs()};
    d.row_perm.resize(n);
    d.col_perm.resize(n);
    std::iota(d.row_perm.begin(), d.row_perm.end(), std::size_t{0});
    std::iota(d.col_perm.begin(), d.col_perm.end(), std::size_t{0});
    Matrix& a = d.lu;
    const double threshold = tol.rank * d.scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    pr = i;
                    pc = j;
                }
        if (best <= threshold || best == 0.0) break;
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pr, j));
            std::swap(d.row_perm[k], d.row_perm[pr]);
            d.sign = -d.sign;
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pc));
            std::swap(d.col_perm[k], d.col_perm[pc]);
            d.sign = -d.sign;
        }
        ++d.rank;
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            const Scalar f = a(i, k);
            if (f == Scalar{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

/// Solves M y = b. Returns nullopt when M is singular under the pivot threshold.
inline std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b,
                                   const Tolerances& tol = default_tolerances()) {
    if (!m.square()) throw DimensionMismatch("solve: matrix not square");
    if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length");
    const std::size_t n = m.rows();
    const LuDecomposition d = lu_decompose(m, tol);
    if (d.rank < n) return std::nullopt;

    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[d.row_perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y[i] -= d.lu(i, j) * y[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) y[i] -= d.lu(i, j) * y[j];
        y[i] /= d.lu(i, i);
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[d.col_perm[i]] = y[i];
    return x;
}

/// Determinant through LU; no singularity threshold is applied.
inline Scalar determinant(const Matrix& m) {
    Tolerances exact;
    exact.rank = 0.0;
    const LuDecomposition d = lu_decompose(m, exact);
    if (d.rank < m.rows()) return Scalar{};
    Scalar det = static_cast<double>(d.sign);
    for (std::size_t i = 0; i < m.rows(); ++i) det *= d.lu(i, i);
    return det;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

struct SvdResult {
    Matrix v;                    // right singular vectors (unitary, cols x cols)
    std::vector<Vector> left;    // columns of M V, one per right vector
    std::vector<double> sigma;   // |left[k]|
};

/// Hestenes one-sided Jacobi: rotates columns of M until mutually orthogonal.
inline SvdResult jacobi_svd(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    std::vector<Vector> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = m.column(j);
    Matrix v = Matrix::identity(n);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double alpha = norm2(a[i]) * norm2(a[i]);
                const double beta = norm2(a[j]) * norm2(a[j]);
                const Scalar gamma = dot_conj(a[i], a[j]);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Scalar phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const Scalar ai = a[i][r], aj = a[j][r];
                    a[i][r] = c * ai - s * std::conj(phase) * aj;
                    a[j][r] = s * phase * ai + c * aj;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Scalar vi = v(r, i), vj = v(r, j);
                    v(r, i) = c * vi - s * std::conj(phase) * vj;
                    v(r, j) = s * phase * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }
    SvdResult out{std::move(v), std::move(a), {}};
    out.sigma.reserve(n);
    for (const Vector& col : out.left) out.sigma.push_back(norm2(col));
    return out;
}

inline double rank_threshold(const Matrix& m, const Tolerances& tol) {
    return tol.rank * static_cast<double>(std::max(m.rows(), m.cols())) * m.max_abs();
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns that
/// become negligible (relative `drop`) are discarded.
inline std::vector<Vector> orthonormalize(std::vector<Vector> cols, double drop = 1e-10) {
    std::vector<Vector> out;
    for (Vector& c : cols) {
        const double original = norm2(c);
        if (original == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& q : out) {
                const Scalar p = dot_conj(q, c);
                for (std::size_t i = 0; i < c.size(); ++i) c[i] -= p * q[i];
            }
        const double nrm = norm2(c);
        if (nrm <= drop * original) continue;
        for (Scalar& z : c) z /= nrm;
        out.push_back(std::move(c));
    }
    return out;
}

/// Orthonormal basis (as columns) of {v : M v = 0}.
inline Matrix nullspace(const Matrix& m, const Tolerances& tol = default_tolerances()) {
    const std::size_t n = m.cols();
    if (n == 0) return Matrix(0, 0);
    const SvdResult svd = jacobi_svd(m);
    const double threshold = rank_threshold(m, tol);
    std::vector<Vector> basis;
    for (std::size_t k = 0; k < n; ++k)
        if (svd.sigma[k] <= threshold) basis.push_back(svd.v.column(k));
    basis = orthonormalize(std::move(basis));
    return Matrix::from_columns(n, basis);
}

/// Orthonormal basis (as columns) of the column space of M.
inline Matrix column_space(const Matrix& m, const Tolerances& tol = default_tolerances()) {
    const std::size_t rows = m.rows();
    if (m.cols() == 0) return Matrix(rows, 0);
    const SvdResult svd = jacobi_svd(m);
    const double threshold = rank_threshold(m, tol);
    std::vector<std::size_t> order(m.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return svd.sigma[x] > svd.sigma[y]; });
    std::vector<Vector> basis;
    for (std::size_t k : order)
        if (svd.sigma[k] > threshold) basis.push_back(svd.left[k]);
    basis = orthonormalize(std::move(basis), 0.0);
    return Matrix::from_columns(rows, basis);
}

/// Numerical rank from singular values under the rank threshold.
inline std::size_t matrix_rank(const Matrix& m, const Tolerances& tol = default_tolerances()) {
    if (m.empty()) return 0;
    const SvdResult svd = jacobi_svd(m);
    const double threshold = rank_threshold(m, tol);
    return static_cast<std::size_t>(
        std::count_if(svd.sigma.begin(), svd.sigma.end(), [&](double s) { return s > threshold; }));
}

inline double smallest_singular_value(const Matrix& m) {
    const SvdResult svd = jacobi_svd(m);
    double s = std::numeric_limits<double>::infinity();
    for (double x : svd.sigma) s = std::min(s, x);
    // Wide matrices have cols - rows structural zeros not represented above.
    if (m.cols() > m.rows()) return 0.0;
    return s;
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder reduction to Hessenberg form, then explicitly
// shifted complex QR with Wilkinson shifts and deflation.

inline Matrix hessenberg(Matrix h) {
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        Vector x(n - k - 1);
        for (std::size_t i = k + 1; i < n; ++i) x[i - k - 1] = h(i, k);
        const double xn = norm2(x);
        if (xn == 0.0) continue;
        const Scalar phase = std::abs(x[0]) == 0.0 ? Scalar(1.0) : x[0] / std::abs(x[0]);
        Vector v = x;
        v[0] += phase * xn;
        const double vn = norm2(v);
        for (Scalar& z : v) z /= vn;
        // H <- (I - 2 v v^H) H (I - 2 v v^H), acting on indices k+1..n-1.
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s{};
            for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= 2.0 * v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Scalar s{};
            for (std::size_t j = 0; j < v.size(); ++j) s += h(i, k + 1 + j) * v[j];
            for (std::size_t j = 0; j < v.size(); ++j) h(i, k + 1 + j) -= 2.0 * s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

namespace detail {

struct Givens {
    double c = 1.0;
    Scalar s{};

    static Givens zeroing(Scalar a, Scalar b) {
        const double r = std::hypot(std::abs(a), std::abs(b));
        if (r == 0.0) return {};
        if (std::abs(a) == 0.0) return {0.0, std::conj(b) / std::abs(b)};
        return {std::abs(a) / r, (a / std::abs(a)) * std::conj(b) / r};
    }
};

} // namespace detail

/// All eigenvalues of a square matrix, with multiplicity.
/// Throws ConvergenceFailure when the QR iteration exceeds its budget.
inline Vector eigenvalues(const Matrix& m, const Tolerances& tol = default_tolerances()) {
    if (!m.square() || m.rows() == 0) throw DimensionMismatch("eigenvalues: need a non-empty square matrix");
    const std::size_t n = m.rows();
    Matrix h = hessenberg(m);
    Vector result(n);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double global = std::max(h.max_abs(), std::numeric_limits<double>::min());

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int iterations = 0;
    int total = 0;
    while (hi >= 0) {
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= eps * (diag == 0.0 ? global : diag) || sub <= eps * eps * global) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            result[static_cast<std::size_t>(hi)] = h(hi, hi);
            --hi;
            iterations = 0;
            continue;
        }
        if (++iterations > tol.eig_max_iterations || ++total > tol.eig_max_iterations * static_cast<int>(n)) {
            throw ConvergenceFailure("eigenvalues: QR iteration did not converge");
        }

        Scalar shift;
        if (iterations % 11 == 0) {
            // Exceptional shift to break cycles.
            shift = h(hi, hi) + Scalar(0.75, 0.4) * std::abs(h(hi, hi - 1));
        } else {
            const Scalar a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
            const Scalar half_tr = 0.5 * (a + d);
            const Scalar disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
            const Scalar r1 = half_tr + disc, r2 = half_tr - disc;
            shift = std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
        }

        const auto ulo = static_cast<std::size_t>(lo), uhi = static_cast<std::size_t>(hi);
        for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) -= shift;
        std::vector<detail::Givens> rotations;
        rotations.reserve(uhi - ulo);
        for (std::size_t k = ulo; k < uhi; ++k) {
            const detail::Givens g = detail::Givens::zeroing(h(k, k), h(k + 1, k));
            for (std::size_t j = k; j <= uhi; ++j) {
                const Scalar x = h(k, j), y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
            h(k + 1, k) = 0.0;
            rotations.push_back(g);
        }
        for (std::size_t k = ulo; k < uhi; ++k) {
            const detail::Givens& g = rotations[k - ulo];
            for (std::size_t i = ulo; i <= std::min(k + 1, uhi); ++i) {
                const Scalar x = h(i, k), y = h(i, k + 1);
                h(i, k) = x * g.c + y * std::conj(g.s);
                h(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) += shift;
    }
    return result;
}

/// Basis (as columns) of {w : w^T M = lambda w^T}.
inline Matrix left_eigenvectors(const Matrix& m, Scalar lambda, const Tolerances& tol = default_tolerances()) {
    if (!m.square()) throw DimensionMismatch("left_eigenvectors: matrix not square");
    return nullspace(m.transpose().shifted(lambda), tol);
}

// ---------------------------------------------------------------------------
// Eigenvalue clusters and multiset comparison

struct EigenCluster {
    Scalar value;
    std::size_t multiplicity = 0;
};

/// Groups eigenvalues that represent one exact eigenvalue.
///
/// A defective eigenvalue of algebraic multiplicity k is returned by any
/// backward-stable solver as k values spread over a radius of roughly
/// (backward error)^(1/k). A group of k values is accepted when every member
/// lies within max(dedup, cluster_backward_error^(1/k)) * max(1, scale) of the
/// group mean; otherwise it is split into single-linkage components at a
/// shrinking linkage distance and each part is examined again. The mean of an
/// accepted group is accurate even when its members are not.
inline std::vector<EigenCluster> cluster_eigenvalues(std::span<const Scalar> values, double scale,
                                                     const Tolerances& tol = default_tolerances()) {
    const double unit = std::max(1.0, scale);
    auto allowed = [&](std::size_t k) {
        return std::max(tol.dedup, std::pow(tol.cluster_backward_error, 1.0 / static_cast<double>(k))) * unit;
    };
    auto mean_of = [](const std::vector<Scalar>& g) {
        Scalar sum{};
        for (Scalar z : g) sum += z;
        return sum / static_cast<double>(g.size());
    };
    auto components = [](const std::vector<Scalar>& g, double link) {
        std::vector<std::size_t> label(g.size(), g.size());
        std::vector<std::vector<Scalar>> parts;
        for (std::size_t seed = 0; seed < g.size(); ++seed) {
            if (label[seed] != g.size()) continue;
            std::vector<std::size_t> stack{seed};
            label[seed] = parts.size();
            std::vector<Scalar> part;
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                part.push_back(g[i]);
                for (std::size_t j = 0; j < g.size(); ++j)
                    if (label[j] == g.size() && std::abs(g[i] - g[j]) <= link) {
                        label[j] = parts.size();
                        stack.push_back(j);
                    }
            }
            parts.push_back(std::move(part));
        }
        return parts;
    };

    std::vector<EigenCluster> out;
    std::vector<std::pair<std::vector<Scalar>, double>> work;
    work.emplace_back(std::vector<Scalar>(values.begin(), values.end()), 2.0 * allowed(values.size()));
    while (!work.empty()) {
        auto [group, link] = std::move(work.back());
        work.pop_back();
        if (group.empty()) continue;
        const Scalar mean = mean_of(group);
        const bool tight = std::all_of(group.begin(), group.end(),
                                       [&](Scalar z) { return std::abs(z - mean) <= allowed(group.size()); });
        if (tight) {
            out.push_back({mean, group.size()});
            continue;
        }
        auto parts = components(group, link);
        while (parts.size() == 1) {
            link *= 0.5;
            parts = components(group, link);
        }
        for (auto& p : parts) work.emplace_back(std::move(p), link);
    }
    return out;
}

/// Greedy minimal-distance matching of two equally sized multisets.
/// Returns the largest matched distance (infinity if the sizes differ).
inline double multiset_distance(std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used_a(a.size()), used_b(b.size());
    double worst = 0.0;
    for (std::size_t round = 0; round < a.size(); ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (used_b[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

/// Hausdorff distance between two finite sets of scalars.
inline double set_distance(std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    auto directed = [](std::span<const Scalar> x, std::span<const Scalar> y) {
        double worst = 0.0;
        for (Scalar p : x) {
            double nearest = std::numeric_limits<double>::infinity();
            for (Scalar q : y) nearest = std::min(nearest, std::abs(p - q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

/// Residual of v against the span of orthonormal columns Q: |v - Q Q^H v|.
inline double projection_residual(const Matrix& q, std::span<const Scalar> v) {
    Vector r(v.begin(), v.end());
    for (std::size_t j = 0; j < q.cols(); ++j) {
        Scalar p{};
        for (std::size_t i = 0; i < q.rows(); ++i) p += std::conj(q(i, j)) * v[i];
        for (std::size_t i = 0; i < q.rows(); ++i) r[i] -= p * q(i, j);
    }
    return norm2(r);
}

} // namespace fdalg
