#pragma once

// Reference computations that share no code path with the library's numerics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "fdalg/fdalg.hpp"

namespace fdalg::testing {

/// Smallest m and period p with m*a + p*a == m*a (multiples start at 1*a).
inline std::size_t period_of(const Semigroup& s, std::size_t a) {
    std::vector<std::size_t> seen_at(s.size(), 0);
    std::size_t x = a;
    for (std::size_t k = 1;; ++k) {
        if (seen_at[x] != 0) return k - seen_at[x];
        seen_at[x] = k;
        x = s.add(x, a);
    }
}

/// All semicharacters by exhaustive search: a nonzero value at a must be a
/// p-th root of unity where p is the period of a.
inline std::vector<Vector> brute_force_semicharacters(const Semigroup& s, double tol = 1e-9) {
    const std::size_t n = s.size();
    std::vector<std::vector<Scalar>> options(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (a == s.identity()) {
            options[a] = {1.0};
            continue;
        }
        const std::size_t p = period_of(s, a);
        options[a].push_back(0.0);
        for (std::size_t k = 0; k < p; ++k) options[a].push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / p));
    }
    std::vector<Vector> out;
    std::vector<std::size_t> pick(n, 0);
    Vector phi(n);
    while (true) {
        for (std::size_t a = 0; a < n; ++a) phi[a] = options[a][pick[a]];
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = a; b < n && ok; ++b) ok = std::abs(phi[s.add(a, b)] - phi[a] * phi[b]) <= tol;
        if (ok) out.push_back(phi);
        std::size_t i = 0;
        while (i < n && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == n) break;
    }
    return out;
}

/// Characters of C[Z/n] in the delta basis: phi_k(delta_a) = exp(2 pi i k a / n).
inline std::vector<Vector> cyclic_characters(std::size_t n) {
    std::vector<Vector> out;
    for (std::size_t k = 0; k < n; ++k) {
        Vector phi(n);
        for (std::size_t a = 0; a < n; ++a) phi[a] = std::polar(1.0, 2.0 * std::numbers::pi * double(k * a) / double(n));
        out.push_back(phi);
    }
    return out;
}

/// Horner evaluation of sum_k c_k t^k.
inline Scalar eval_poly(const Vector& c, Scalar t) {
    Scalar v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
    return v;
}

/// Value of the element sum_k x_k t^k of C[t]/(p) under the character t -> r.
inline Scalar eval_at_root(const Vector& x, Scalar r) { return eval_poly(x, r); }

/// Every vector of `found` matches a distinct vector of `expected` within tol.
inline bool same_vector_sets(const std::vector<Vector>& found, const std::vector<Vector>& expected, double tol) {
    if (found.size() != expected.size()) return false;
    std::vector<bool> used(expected.size(), false);
    for (const Vector& f : found) {
        bool matched = false;
        for (std::size_t j = 0; j < expected.size() && !matched; ++j) {
            if (used[j] || expected[j].size() != f.size()) continue;
            double d = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - expected[j][i]));
            if (d <= tol) matched = used[j] = true;
        }
        if (!matched) return false;
    }
    return true;
}

/// Leibniz-formula determinant, for small matrices only.
inline Scalar leibniz_determinant(const Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Scalar total = 0.0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        Scalar term = inversions % 2 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_unit_disc(rng);
    return m;
}

inline Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    Vector v(n);
    for (Scalar& z : v) z = random_unit_disc(rng);
    return v;
}

inline double max_diff(std::span<const Scalar> a, std::span<const Scalar> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace fdalg::testing
