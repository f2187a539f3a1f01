#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "characters.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace fdalg {

enum class NormKind {
    Sup,          ///< max_p |f(p)|, function algebras only
    L1,           ///< sum_a |f(a)|, semigroup algebras only
    CoordinateL1, ///< sum_i |x_i| in whatever basis the algebra has
};

inline std::string_view to_string(NormKind k) {
    switch (k) {
    case NormKind::Sup: return "sup";
    case NormKind::L1: return "l1";
    case NormKind::CoordinateL1: return "coordinate-l1";
    }
    return "?";
}

inline std::optional<NormKind> parse_norm_kind(std::string_view s) {
    if (s == "sup") return NormKind::Sup;
    if (s == "l1") return NormKind::L1;
    if (s == "coordinate-l1") return NormKind::CoordinateL1;
    return std::nullopt;
}

inline bool norm_applicable(NormKind kind, const Algebra& a) {
    switch (kind) {
    case NormKind::Sup: return a.tags().function_algebra;
    case NormKind::L1: return a.tags().semigroup_algebra;
    case NormKind::CoordinateL1: return true;
    }
    return false;
}

inline void require_norm_applicable(NormKind kind, const Algebra& a) {
    if (!norm_applicable(kind, a)) {
        throw InapplicableNorm(std::string("norm '") + std::string(to_string(kind)) + "' does not apply to this algebra");
    }
}

inline double norm(NormKind kind, const Algebra& a, const Element& x) {
    require_norm_applicable(kind, a);
    a.require_member(x);
    if (kind == NormKind::Sup) return x.max_abs();
    double s = 0.0;
    for (Scalar z : x.coords()) s += std::abs(z);
    return s;
}

// ---------------------------------------------------------------------------

/// Worst margins over random trials; a margin is (bound - value) / max(1, bound),
/// so negative means the inequality failed.
struct NormedAlgebraReport {
    NormKind kind = NormKind::CoordinateL1;
    std::size_t trials = 0;
    double worst_triangle = std::numeric_limits<double>::infinity();
    double worst_submultiplicative = std::numeric_limits<double>::infinity();
    double worst_homogeneity = 0.0; // largest relative |‖αx‖ - |α|‖x‖|
    double identity_norm = 0.0;
    std::size_t violations = 0;

    [[nodiscard]] double worst_slack() const { return std::min(worst_triangle, worst_submultiplicative); }
    [[nodiscard]] bool passed() const { return violations == 0; }
};

/// Checks the normed-algebra axioms on `trials` random pairs drawn from the unit disc.
inline NormedAlgebraReport check_normed_algebra(const Algebra& a, NormKind kind, std::size_t trials, std::uint64_t seed,
                                                double slack = 1e-12) {
    require_norm_applicable(kind, a);
    NormedAlgebraReport r;
    r.kind = kind;
    r.trials = trials;
    r.identity_norm = norm(kind, a, a.identity());
    if (std::abs(r.identity_norm - 1.0) > slack) ++r.violations;

    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const Element x = random_element(a, rng);
        const Element y = random_element(a, rng);
        const double nx = norm(kind, a, x), ny = norm(kind, a, y);

        const double tri_bound = nx + ny;
        const double tri = (tri_bound - norm(kind, a, x + y)) / std::max(1.0, tri_bound);
        const double mul_bound = nx * ny;
        const double mul = (mul_bound - norm(kind, a, multiply(a, x, y))) / std::max(1.0, mul_bound);

        const Scalar alpha = 3.0 * random_unit_disc(rng);
        const double hom_expected = std::abs(alpha) * nx;
        const double hom = std::abs(norm(kind, a, alpha * x) - hom_expected) / std::max(1.0, hom_expected);

        r.worst_triangle = std::min(r.worst_triangle, tri);
        r.worst_submultiplicative = std::min(r.worst_submultiplicative, mul);
        r.worst_homogeneity = std::max(r.worst_homogeneity, hom);
        if (tri < -slack) ++r.violations;
        if (mul < -slack) ++r.violations;
        if (hom > slack) ++r.violations;
    }
    return r;
}

// ---------------------------------------------------------------------------

struct NeumannSeries {
    Element inverse;
    std::size_t terms = 0;   ///< number of powers summed
    double ratio = 0.0;      ///< ‖x‖ / |lambda|
    double residual = 0.0;   ///< ‖(lambda e - x) y - e‖ in the chosen norm
};

/// Inverts lambda e - x by the geometric series when ‖x‖ < |lambda|.
///
/// The series sum_j lambda^-j x^j shows invertibility; the inverse itself is
/// y = lambda^-1 sum_j (x / lambda)^j, so that (lambda e - x) y = e - (x/lambda)^J
/// after J terms. Summation stops once ‖(x/lambda)^J‖ < tol (1 - r), with
/// r = ‖x‖/|lambda|; for a submultiplicative norm the geometric bound r^J
/// gives the a priori term count.
/// Throws PreconditionViolated if ‖x‖ >= |lambda|.
inline NeumannSeries neumann_inverse(const Algebra& a, NormKind kind, Scalar lambda, const Element& x, double tol) {
    require_norm_applicable(kind, a);
    a.require_member(x);
    if (!(tol > 0.0)) throw InvalidArgument("neumann_inverse: tolerance must be positive");
    const double nx = norm(kind, a, x);
    if (!(nx < std::abs(lambda))) {
        throw PreconditionViolated("neumann_inverse: need norm(x) < |lambda| (norm(x) = " + std::to_string(nx) +
                                   ", |lambda| = " + std::to_string(std::abs(lambda)) + ")");
    }
    const double r = nx / std::abs(lambda);
    const double target = tol * (1.0 - r);
    // r^J <= target; r == 0 means x = 0 and one term suffices.
    const std::size_t a_priori = r == 0.0 ? 1 : static_cast<std::size_t>(std::ceil(std::log(target) / std::log(r)));
    const std::size_t cap = std::max<std::size_t>(a_priori, 1) * 4 + 64;

    const Element step = (1.0 / lambda) * x;
    Element term = a.identity();
    Element sum = Element::zero(a.dim());
    std::size_t j = 0;
    while (true) {
        sum = sum + term;
        term = multiply(a, term, step);
        ++j;
        if (norm(kind, a, term) < target) break;
        if (j >= cap) {
            throw ConvergenceFailure("neumann_inverse: series did not reach the tolerance; the norm may not be "
                                     "submultiplicative on this algebra");
        }
    }
    NeumannSeries out{(1.0 / lambda) * sum, j, r, 0.0};
    const Element shifted = lambda * a.identity() - x;
    out.residual = norm(kind, a, multiply(a, shifted, out.inverse) - a.identity());
    return out;
}

// ---------------------------------------------------------------------------

struct SpectralBoundReport {
    double norm = 0.0;
    double spectral_radius = 0.0;
    double max_character_modulus = 0.0;
    double radius_margin = 0.0;    ///< norm - spectral radius
    double character_margin = 0.0; ///< norm - max |phi(x)|
    bool passed = true;
};

/// |lambda| <= ‖x‖ over the spectrum and |phi(x)| <= ‖x‖ over the given characters.
inline SpectralBoundReport verify_spectral_bounds(const Algebra& a, NormKind kind, const Element& x,
                                                  const std::vector<Character>& chars,
                                                  const Tolerances& tol = default_tolerances()) {
    SpectralBoundReport r;
    r.norm = norm(kind, a, x);
    r.spectral_radius = spectral_radius(a, x, tol);
    for (const Character& phi : chars) r.max_character_modulus = std::max(r.max_character_modulus, std::abs(phi(x)));
    r.radius_margin = r.norm - r.spectral_radius;
    r.character_margin = r.norm - r.max_character_modulus;
    const double allowed = -tol.character * std::max(1.0, r.norm);
    r.passed = r.radius_margin >= allowed && r.character_margin >= allowed;
    return r;
}

inline SpectralBoundReport verify_spectral_bounds(const Algebra& a, NormKind kind, const Element& x,
                                                  const Tolerances& tol = default_tolerances()) {
    return verify_spectral_bounds(a, kind, x, characters(a, kDefaultCharacterSeed, tol), tol);
}

} // namespace fdalg
