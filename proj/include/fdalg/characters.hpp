#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "ideals.hpp"
#include "linalg.hpp"

namespace fdalg {

/// A multiplicative linear functional with phi(e) = 1, stored by its values
/// on the basis: phi(x) = sum_i functional[i] * x_i.
struct Character {
    Vector functional;

    Scalar operator()(const Element& x) const {
        if (x.dim() != functional.size()) throw DimensionMismatch("Character applied to element of wrong dimension");
        return dot(functional, x.coords());
    }
};

/// Distinct eigenvalues of the regular representation with their algebraic multiplicities.
struct Spectrum {
    Vector values;
    std::vector<std::size_t> multiplicities;
};

inline constexpr std::uint64_t kDefaultCharacterSeed = 0x5eedc0de;

/// Largest deviation from phi(e) = 1 and phi(b_i b_j) = phi(b_i) phi(b_j),
/// the latter weighted by (1 + |phi(b_i)|)(1 + |phi(b_j)|).
inline double character_defect(const Algebra& a, const Vector& functional) {
    const std::size_t n = a.dim();
    if (functional.size() != n) throw DimensionMismatch("character_defect: functional length");
    double worst = std::abs(dot(functional, a.identity().coords()) - 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Scalar lhs{};
            for (std::size_t k = 0; k < n; ++k) lhs += a.c(i, j, k) * functional[k];
            const Scalar rhs = functional[i] * functional[j];
            const double w = (1.0 + std::abs(functional[i])) * (1.0 + std::abs(functional[j]));
            worst = std::max(worst, std::abs(lhs - rhs) / w);
        }
    return worst;
}

inline bool is_character(const Algebra& a, const Vector& functional, const Tolerances& tol = default_tolerances()) {
    return character_defect(a, functional) <= tol.character;
}

namespace detail {

inline bool scalar_less(Scalar x, Scalar y) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x.real() - y.real()) > 1e-9 * scale) return x.real() < y.real();
    return x.imag() < y.imag();
}

} // namespace detail

/// Fixed element used to order characters deterministically.
inline Element canonical_probe(std::size_t dim) {
    Vector v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = Scalar(static_cast<double>(k) + 1.0, 1.0 / (static_cast<double>(k) + 2.0));
    return Element(std::move(v));
}

inline void sort_characters(std::vector<Character>& chars, std::size_t dim) {
    const Element probe = canonical_probe(dim);
    std::stable_sort(chars.begin(), chars.end(),
                     [&](const Character& x, const Character& y) { return detail::scalar_less(x(probe), y(probe)); });
}

inline void sort_scalars(Vector& values) { std::stable_sort(values.begin(), values.end(), detail::scalar_less); }

// ---------------------------------------------------------------------------
// Spectrum

inline Spectrum spectrum(const Algebra& a, const Element& x, const Tolerances& tol = default_tolerances()) {
    const Matrix m = regular_representation(a, x);
    const Vector eig = eigenvalues(m, tol);
    std::vector<EigenCluster> clusters = cluster_eigenvalues(eig, m.max_abs(), tol);
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const EigenCluster& p, const EigenCluster& q) { return detail::scalar_less(p.value, q.value); });
    Spectrum s;
    for (const EigenCluster& c : clusters) {
        s.values.push_back(c.value);
        s.multiplicities.push_back(c.multiplicity);
    }
    return s;
}

inline double spectral_radius(const Algebra& a, const Element& x, const Tolerances& tol = default_tolerances()) {
    double r = 0.0;
    for (Scalar v : spectrum(a, x, tol).values) r = std::max(r, std::abs(v));
    return r;
}

// ---------------------------------------------------------------------------
// Characters

/// Nilpotent elements, the kernel of the trace form.
inline Ideal radical(const Algebra& a, const Tolerances& tol = default_tolerances()) {
    return Ideal::spanned_by(a.dim(), radical_basis(a, tol), tol);
}

/// Every character of A, each once, in canonical-probe order.
///
/// Characters vanish on the radical, so the search runs in the semisimple
/// quotient A/rad, where every regular representation is diagonalizable and
/// the number of characters is known in advance (dim A - dim rad). For a
/// random probe a, each character is a left eigenvector of M_a; candidates
/// are normalized to phi(e) = 1, pulled back to A, and kept only if they pass
/// the multiplicativity test on all basis pairs. A fresh probe is drawn when
/// the count comes out wrong (e.g. two characters collide on the probe).
inline std::vector<Character> characters(const Algebra& a, std::uint64_t seed = kDefaultCharacterSeed,
                                         const Tolerances& tol = default_tolerances()) {
    const std::size_t n = a.dim();
    const Ideal rad = radical(a, tol);
    if (rad.dim() >= n) throw ConvergenceFailure("characters: algebra appears to be entirely nilpotent");
    const std::size_t expected = n - rad.dim();

    // With a zero radical the quotient is A itself; skip the change of basis.
    const bool trivial_radical = rad.dim() == 0;
    const QuotientResult qr = trivial_radical
        ? QuotientResult{a, Matrix::identity(n), Matrix::identity(n)}
        : quotient(a, rad, tol);
    const Algebra& semisimple = qr.quotient;
    const Vector unit = semisimple.identity().coords();

    std::size_t best_count = 0;
    for (int draw = 0; draw < tol.probe_retries; ++draw) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(draw)};
        std::mt19937_64 rng(seq);
        const Element probe = random_element(semisimple, rng);
        const Matrix m = regular_representation(semisimple, probe);

        Vector eig;
        try {
            eig = eigenvalues(m, tol);
        } catch (const ConvergenceFailure&) {
            continue;
        }

        std::vector<Character> found;
        for (const EigenCluster& cluster : cluster_eigenvalues(eig, m.max_abs(), tol)) {
            const Matrix w = left_eigenvectors(m, cluster.value, tol);
            for (std::size_t col = 0; col < w.cols(); ++col) {
                Vector psi = w.column(col);
                const Scalar at_unit = dot(psi, unit);
                if (std::abs(at_unit) <= tol.character * max_abs(psi)) continue;
                for (Scalar& z : psi) z /= at_unit;
                // phi = psi o projection, i.e. phi_k = sum_j psi_j P(j, k).
                Vector phi(n);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < psi.size(); ++j) phi[k] += psi[j] * qr.projection(j, k);
                if (!is_character(a, phi, tol)) continue;
                const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Character& c) {
                    double d = 0.0;
                    for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(c.functional[k] - phi[k]));
                    return d <= tol.dedup;
                });
                if (!duplicate) found.push_back(Character{std::move(phi)});
            }
        }
        best_count = std::max(best_count, found.size());
        if (found.size() == expected) {
            sort_characters(found, n);
            return found;
        }
    }
    throw ConvergenceFailure("characters: found " + std::to_string(best_count) + " of " + std::to_string(expected) +
                             " characters after " + std::to_string(tol.probe_retries) + " probes");
}

/// The character in `chars` closest to vanishing on x, if it does vanish.
inline Character witness_noninvertible(const std::vector<Character>& chars, const Element& x,
                                       const Tolerances& tol = default_tolerances()) {
    const Character* best = nullptr;
    double best_value = 0.0;
    for (const Character& c : chars) {
        const double v = std::abs(c(x));
        if (best == nullptr || v < best_value) {
            best = &c;
            best_value = v;
        }
    }
    if (best == nullptr || best_value > tol.character * std::max(1.0, x.max_abs())) {
        throw ConvergenceFailure("witness_noninvertible: no character vanishes on the element");
    }
    return *best;
}

/// A character with phi(x) = 0, certifying that x is not invertible.
/// Throws NotApplicable if x is invertible.
inline Character witness_noninvertible(const Algebra& a, const Element& x, std::uint64_t seed = kDefaultCharacterSeed,
                                       const Tolerances& tol = default_tolerances()) {
    if (invert(a, x, tol)) throw NotApplicable("witness_noninvertible: element is invertible");
    return witness_noninvertible(characters(a, seed, tol), x, tol);
}

} // namespace fdalg
