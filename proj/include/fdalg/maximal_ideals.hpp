#pragma once

#include <cstdint>
#include <vector>

#include "algebra.hpp"
#include "characters.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "ideals.hpp"
#include "linalg.hpp"

namespace fdalg {

/// ker(phi), a subspace of codimension one.
inline Ideal character_kernel(const Algebra& a, const Character& phi, const Tolerances& tol = default_tolerances()) {
    if (phi.functional.size() != a.dim()) throw DimensionMismatch("character_kernel: functional length");
    const Matrix row(1, a.dim(), phi.functional);
    return Ideal::spanned_by(a.dim(), nullspace(row, tol), tol);
}

/// Kernels of all characters; these are exactly the maximal ideals.
inline std::vector<Ideal> maximal_ideals(const Algebra& a, std::uint64_t seed = kDefaultCharacterSeed,
                                         const Tolerances& tol = default_tolerances()) {
    std::vector<Ideal> out;
    for (const Character& phi : characters(a, seed, tol)) {
        Ideal k = character_kernel(a, phi, tol);
        bool duplicate = false;
        for (const Ideal& seen : out) duplicate = duplicate || seen.same_subspace(k, tol);
        if (!duplicate) out.push_back(std::move(k));
    }
    return out;
}

/// A maximal ideal containing the proper ideal I: take a character psi of
/// A/I and return the kernel of psi composed with the quotient map.
inline Ideal maximal_ideal_containing(const Algebra& a, const Ideal& ideal, std::uint64_t seed = kDefaultCharacterSeed,
                                      const Tolerances& tol = default_tolerances()) {
    if (!is_proper(a, ideal)) throw NotProper("maximal_ideal_containing: ideal is the whole algebra");
    const QuotientResult qr = quotient(a, ideal, tol);
    const std::vector<Character> chars = characters(qr.quotient, seed, tol);
    const Vector& psi = chars.front().functional;
    Character phi{Vector(a.dim())};
    for (std::size_t k = 0; k < a.dim(); ++k)
        for (std::size_t j = 0; j < psi.size(); ++j) phi.functional[k] += psi[j] * qr.projection(j, k);
    return character_kernel(a, phi, tol);
}

} // namespace fdalg
