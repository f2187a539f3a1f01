#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "characters.hpp"
#include "config.hpp"
#include "ideals.hpp"
#include "linalg.hpp"
#include "maximal_ideals.hpp"
#include "norms.hpp"
#include "semigroup.hpp"

namespace fdalg {

/// One line of an invariant report. `worst` is the largest observed
/// violation measure (or smallest margin, as documented per check).
struct CheckItem {
    std::string name;
    bool passed = true;
    double worst = 0.0;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;

    [[nodiscard]] bool passed() const {
        return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
    }
    void add(std::string name, bool ok, double worst, std::string detail = {}) {
        items.push_back({std::move(name), ok, worst, std::move(detail)});
    }
};

struct CheckOptions {
    std::optional<NormKind> norm;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

namespace detail {

inline double rel(double err, double scale) { return err / std::max(1.0, scale); }

inline double max_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

} // namespace detail

/// Invertibility verdicts of x from the linear solve, the principal ideal and the characters.
struct InvertibilityVerdicts {
    bool solvable = false;      ///< invert() succeeded
    bool ideal_is_whole = false; ///< principal ideal has full dimension
    bool no_vanishing_character = false;

    [[nodiscard]] bool agree() const {
        return solvable == ideal_is_whole && solvable == no_vanishing_character;
    }
};

inline InvertibilityVerdicts invertibility_verdicts(const Algebra& a, const Element& x,
                                                    const std::vector<Character>& chars,
                                                    const Tolerances& tol = default_tolerances()) {
    InvertibilityVerdicts v;
    v.solvable = invert(a, x, tol).has_value();
    v.ideal_is_whole = !is_proper(a, principal_ideal(a, x, tol));
    const double threshold = tol.character * std::max(1.0, x.max_abs());
    v.no_vanishing_character =
        std::none_of(chars.begin(), chars.end(), [&](const Character& c) { return std::abs(c(x)) <= threshold; });
    return v;
}

/// Random elements, every other one shifted onto a point of its own spectrum
/// so that non-invertible elements are exercised as often as invertible ones.
inline Element triad_sample(const Algebra& a, std::mt19937_64& rng, std::size_t index,
                            const Tolerances& tol = default_tolerances()) {
    Element x = random_element(a, rng);
    if (index % 2 == 1) {
        const Spectrum s = spectrum(a, x, tol);
        const Scalar lambda = s.values[index / 2 % s.values.size()];
        x = x - lambda * a.identity();
    }
    return x;
}

/// Full invariant report for one algebra.
inline CheckReport check_algebra(const Algebra& a, const CheckOptions& opt, const Tolerances& tol = default_tolerances()) {
    CheckReport rep;
    const ValidationReport axioms = validate_algebra(a, tol);
    for (const AxiomCheck& c : axioms.checks) rep.add("axiom:" + c.axiom, c.passed, c.max_violation);
    if (!axioms.passed()) return rep;

    std::mt19937_64 rng(opt.seed);
    const Element e = a.identity();

    double comm = 0.0, assoc = 0.0, hom = 0.0, inv = 0.0;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const Element x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
        const Element xy = multiply(a, x, y);
        comm = std::max(comm, detail::rel((xy - multiply(a, y, x)).max_abs(), xy.max_abs()));
        const double scale = norm2(x.coords()) * norm2(y.coords()) * norm2(z.coords());
        assoc = std::max(assoc, detail::rel((multiply(a, xy, z) - multiply(a, x, multiply(a, y, z))).max_abs(), scale));
        const Matrix mxy = regular_representation(a, xy);
        const Matrix prod = regular_representation(a, x) * regular_representation(a, y);
        hom = std::max(hom, detail::rel(detail::max_diff(mxy, prod), mxy.max_abs()));
        if (auto xi = invert(a, x, tol)) inv = std::max(inv, (multiply(a, x, *xi) - e).max_abs());
    }
    rep.add("multiply:commutative", comm <= 1e-12, comm);
    rep.add("multiply:associative", assoc <= 1e-9, assoc);
    rep.add("regular_representation:homomorphism", hom <= 1e-9, hom);
    rep.add("invert:residual", inv <= 1e-8, inv);

    std::vector<Character> chars;
    try {
        chars = characters(a, kDefaultCharacterSeed, tol);
    } catch (const ConvergenceFailure& err) {
        rep.add("characters:search", false, 0.0, err.what());
        return rep;
    }
    rep.add("characters:count", !chars.empty() && chars.size() <= a.dim(), static_cast<double>(chars.size()));

    double spec = 0.0, mult = 0.0;
    std::size_t disagreements = 0;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const Element x = random_element(a, rng), y = random_element(a, rng);
        const Spectrum s = spectrum(a, x, tol);
        Vector values;
        for (const Character& c : chars) values.push_back(c(x));
        spec = std::max(spec, detail::rel(set_distance(values, s.values), x.max_abs()));
        for (const Character& c : chars) {
            const Scalar cx = c(x), cy = c(y);
            const double w = (1.0 + std::abs(cx)) * (1.0 + std::abs(cy));
            mult = std::max(mult, std::abs(c(multiply(a, x, y)) - cx * cy) / w);
        }
        if (!invertibility_verdicts(a, triad_sample(a, rng, t, tol), chars, tol).agree()) ++disagreements;
    }
    rep.add("spectrum:equals_character_values", spec <= tol.dedup, spec);
    rep.add("characters:multiplicative", mult <= 1e-8, mult);
    rep.add("invertibility:triad_agrees", disagreements == 0, static_cast<double>(disagreements));

    double quotient_defect = 0.0;
    bool quotients_ok = true;
    for (const Character& phi : chars) {
        const Ideal m = character_kernel(a, phi, tol);
        const QuotientResult q = quotient(a, m, tol);
        quotients_ok = quotients_ok && q.quotient.dim() == 1 && m.dim() + 1 == a.dim();
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const Element bi = a.basis(i), bj = a.basis(j);
                const Element lhs = q.project(multiply(a, bi, bj));
                const Element rhs = multiply(q.quotient, q.project(bi), q.project(bj));
                quotient_defect = std::max(quotient_defect, (lhs - rhs).max_abs());
            }
    }
    rep.add("maximal_ideals:quotient_is_field", quotients_ok && quotient_defect <= tol.ideal, quotient_defect);

    if (a.tags().function_algebra) {
        bool evaluations = chars.size() == a.dim();
        for (std::size_t p = 0; evaluations && p < chars.size(); ++p) {
            bool matched = false;
            for (const Character& c : chars)
                matched = matched || (a.basis(p) - Element(c.functional)).max_abs() <= tol.character;
            evaluations = matched;
        }
        rep.add("function_algebra:characters_are_evaluations", evaluations, static_cast<double>(chars.size()));
        double gap = 0.0;
        for (std::size_t t = 0; t < opt.trials; ++t) {
            const Element f = random_element(a, rng);
            gap = std::max(gap, std::abs(norm(NormKind::Sup, a, f) - spectral_radius(a, f, tol)));
        }
        rep.add("function_algebra:sup_norm_is_spectral_radius", gap <= 1e-10, gap);
    }

    if (opt.norm) {
        const NormKind kind = *opt.norm;
        if (!norm_applicable(kind, a)) {
            rep.add("norm:applicable", false, 0.0, std::string(to_string(kind)) + " does not apply");
            return rep;
        }
        const NormedAlgebraReport nr = check_normed_algebra(a, kind, opt.trials, opt.seed);
        rep.add("norm:normed_algebra_axioms", nr.passed(), nr.worst_slack(),
                "identity norm " + std::to_string(nr.identity_norm));
        if (!nr.passed()) return rep;

        double bound = 0.0;
        double agreement = 0.0, residual = 0.0;
        for (std::size_t t = 0; t < opt.trials; ++t) {
            const Element x = random_element(a, rng);
            const SpectralBoundReport b = verify_spectral_bounds(a, kind, x, chars, tol);
            if (!b.passed) bound = std::max(bound, -std::min(b.radius_margin, b.character_margin));

            std::uniform_real_distribution<double> u(0.05, 0.9);
            const Scalar lambda = std::polar(1.0 + 2.0 * u(rng), 6.283185307179586 * u(rng));
            const double nx = norm(kind, a, x);
            if (nx == 0.0) continue;
            const Element scaled = (u(rng) * std::abs(lambda) / nx) * x;
            const NeumannSeries ns = neumann_inverse(a, kind, lambda, scaled, 1e-9);
            const auto direct = invert(a, lambda * e - scaled, tol);
            residual = std::max(residual, (multiply(a, lambda * e - scaled, ns.inverse) - e).max_abs());
            agreement = std::max(agreement, direct ? (ns.inverse - *direct).max_abs() : 1.0);
        }
        rep.add("norm:spectral_bounds", bound == 0.0, bound);
        rep.add("norm:neumann_residual", residual <= 1e-7, residual);
        rep.add("norm:neumann_matches_inverse", agreement <= 1e-7, agreement);
    }
    return rep;
}

/// Semigroup-level checks followed by the algebra checks on its convolution algebra.
inline CheckReport check_semigroup(const Semigroup& s, const CheckOptions& opt, const Tolerances& tol = default_tolerances()) {
    CheckReport rep;
    const ValidationReport axioms = validate_semigroup(s);
    for (const AxiomCheck& c : axioms.checks) rep.add("semigroup:" + c.axiom, c.passed, c.max_violation);
    if (!axioms.passed()) return rep;

    const std::size_t n = s.size();
    bool table_ok = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table_ok = table_ok && convolve(s, delta(s, a), delta(s, b)) == delta(s, s.add(a, b));
    rep.add("convolution:delta_table_matches_cayley_table", table_ok, table_ok ? 0.0 : 1.0);

    const Algebra alg = semigroup_algebra(s);
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    double consistency = 0.0;
    bool commutes = true;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const Element f1 = random_element(alg, rng), f2 = random_element(alg, rng);
        const Vector c12 = convolve(s, f1.coords(), f2.coords());
        commutes = commutes && c12 == convolve(s, f2.coords(), f1.coords());
        consistency = std::max(consistency, (Element(c12) - multiply(alg, f1, f2)).max_abs());
    }
    rep.add("convolution:commutative_exactly", commutes, commutes ? 0.0 : 1.0);
    rep.add("convolution:matches_algebra_product", consistency <= 1e-12, consistency);

    try {
        const std::vector<Semicharacter> sc = semicharacters(s, kDefaultCharacterSeed, tol);
        double bound = 0.0, unit = 0.0, roundtrip = 0.0;
        for (const Semicharacter& phi : sc) {
            for (Scalar v : phi.values) bound = std::max(bound, std::abs(v) - 1.0);
            unit = std::max(unit, std::abs(phi.values[s.identity()] - 1.0));
            const Character c = character_from_semicharacter(s, phi, tol);
            roundtrip = std::max(roundtrip, character_defect(alg, c.functional));
        }
        rep.add("semicharacters:bounded_by_one", bound <= 1e-9, bound);
        rep.add("semicharacters:unit_at_identity", unit <= tol.character, unit);
        rep.add("semicharacters:extend_to_characters", roundtrip <= tol.character, roundtrip);
    } catch (const Error& err) {
        rep.add("semicharacters:search", false, 0.0, err.what());
    }

    CheckOptions inner = opt;
    if (!inner.norm) inner.norm = NormKind::L1;
    for (CheckItem& item : check_algebra(alg, inner, tol).items) rep.items.push_back(std::move(item));
    return rep;
}

} // namespace fdalg
