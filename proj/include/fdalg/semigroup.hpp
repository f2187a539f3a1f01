#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "characters.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace fdalg {

/// A finite commutative semigroup with identity, as a Cayley table over the
/// dense indices 0..n-1. Names are for display only.
class Semigroup {
public:
    /// Checks shape and index ranges; the axioms are checked by validate_semigroup.
    Semigroup(std::size_t size, std::vector<std::size_t> table, std::size_t identity_index,
              std::vector<std::string> names = {})
        : size_(size), table_(std::move(table)), identity_(identity_index), names_(std::move(names)) {
        if (size_ == 0) throw InvalidArgument("Semigroup: size must be positive");
        if (table_.size() != size_ * size_) throw DimensionMismatch("Semigroup: table needs size^2 entries");
        for (std::size_t v : table_)
            if (v >= size_) throw InvalidArgument("Semigroup: table entry out of range");
        if (identity_ >= size_) throw InvalidArgument("Semigroup: identity index out of range");
        if (names_.empty())
            for (std::size_t i = 0; i < size_; ++i) names_.push_back(std::to_string(i));
        if (names_.size() != size_) throw DimensionMismatch("Semigroup: names length differs from size");
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] std::size_t identity() const { return identity_; }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::vector<std::size_t>& table() const { return table_; }
    [[nodiscard]] std::size_t add(std::size_t a, std::size_t b) const { return table_[a * size_ + b]; }

    friend bool operator==(const Semigroup&, const Semigroup&) = default;

private:
    std::size_t size_;
    std::vector<std::size_t> table_;
    std::size_t identity_;
    std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Catalog constructors

/// Z/n under addition.
inline Semigroup cyclic_group(std::size_t n) {
    if (n == 0) throw InvalidArgument("cyclic_group: n must be positive");
    std::vector<std::size_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return Semigroup(n, std::move(t), 0);
}

/// {0, ..., k} with a + b = max(a, b); every element is idempotent.
inline Semigroup max_chain(std::size_t k) {
    const std::size_t n = k + 1;
    std::vector<std::size_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = std::max(a, b);
    return Semigroup(n, std::move(t), 0);
}

/// {0, ..., k} with a + b = min(a + b, k); k is absorbing.
inline Semigroup truncation_monoid(std::size_t k) {
    const std::size_t n = k + 1;
    std::vector<std::size_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = std::min(a + b, k);
    return Semigroup(n, std::move(t), 0);
}

/// S x T with componentwise addition; element (s, t) has index s * |T| + t.
inline Semigroup direct_product(const Semigroup& s, const Semigroup& t) {
    const std::size_t n = s.size() * t.size();
    std::vector<std::size_t> table(n * n);
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back("(" + s.names()[a / t.size()] + "," + t.names()[a % t.size()] + ")");
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t first = s.add(a / t.size(), b / t.size());
            const std::size_t second = t.add(a % t.size(), b % t.size());
            table[a * n + b] = first * t.size() + second;
        }
    }
    return Semigroup(n, std::move(table), s.identity() * t.size() + t.identity(), std::move(names));
}

// ---------------------------------------------------------------------------
// Validation: exact integer checks

/// Commutativity, identity law and associativity of the Cayley table.
/// Violations report how many index tuples fail and the first offender.
inline ValidationReport validate_semigroup(const Semigroup& s) {
    const std::size_t n = s.size();
    ValidationReport report;

    AxiomCheck comm{"commutativity", 0.0, {}, true};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (s.add(a, b) != s.add(b, a)) {
                if (comm.passed) comm.indices = {a, b};
                comm.passed = false;
                comm.max_violation += 1.0;
            }
    report.checks.push_back(comm);

    AxiomCheck unit{"identity_law", 0.0, {}, true};
    for (std::size_t a = 0; a < n; ++a)
        if (s.add(a, s.identity()) != a || s.add(s.identity(), a) != a) {
            if (unit.passed) unit.indices = {a};
            unit.passed = false;
            unit.max_violation += 1.0;
        }
    report.checks.push_back(unit);

    AxiomCheck assoc{"associativity", 0.0, {}, true};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c))) {
                    if (assoc.passed) assoc.indices = {a, b, c};
                    assoc.passed = false;
                    assoc.max_violation += 1.0;
                }
    report.checks.push_back(assoc);
    return report;
}

// ---------------------------------------------------------------------------
// Convolution

/// (f1 * f2)(z) = sum over ordered pairs (x, y) with x + y = z of f1(x) f2(y).
///
/// Pairs are accumulated in a symmetric order (each unordered pair {x, y} as
/// f1(x) f2(y) + f1(y) f2(x)) so that swapping f1 and f2 gives bit-identical
/// results.
inline Vector convolve(const Semigroup& s, std::span<const Scalar> f1, std::span<const Scalar> f2) {
    const std::size_t n = s.size();
    if (f1.size() != n || f2.size() != n) throw DimensionMismatch("convolve: vector length differs from semigroup size");
    Vector out(n);
    for (std::size_t x = 0; x < n; ++x) {
        out[s.add(x, x)] += f1[x] * f2[x];
        for (std::size_t y = x + 1; y < n; ++y) out[s.add(x, y)] += f1[x] * f2[y] + f1[y] * f2[x];
    }
    return out;
}

/// Indicator function of element a.
inline Vector delta(const Semigroup& s, std::size_t a) {
    if (a >= s.size()) throw InvalidArgument("delta: element index out of range");
    Vector v(s.size());
    v[a] = 1.0;
    return v;
}

/// Functions on S under convolution, in the basis of deltas.
inline Algebra semigroup_algebra(const Semigroup& s) {
    if (const ValidationReport r = validate_semigroup(s); !r.passed()) {
        throw ValidationError("semigroup_algebra: invalid semigroup: " + r.describe_first_failure());
    }
    const std::size_t n = s.size();
    Vector c(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + s.add(i, j)] = 1.0;
    std::vector<std::string> names;
    for (const std::string& name : s.names()) names.push_back("d" + name);
    return Algebra(n, std::move(c), delta(s, s.identity()), std::move(names), AlgebraTags{false, true});
}

// ---------------------------------------------------------------------------
// Semicharacters

/// A map Phi : S -> C with Phi(0) = 1 and Phi(a + b) = Phi(a) Phi(b).
struct Semicharacter {
    Vector values;
};

/// Largest violation among Phi(0) = 1, multiplicativity over all pairs, and |Phi| <= 1.
inline double semicharacter_defect(const Semigroup& s, const Vector& values) {
    if (values.size() != s.size()) throw DimensionMismatch("semicharacter: length differs from semigroup size");
    double worst = std::abs(values[s.identity()] - 1.0);
    for (std::size_t a = 0; a < s.size(); ++a) {
        worst = std::max(worst, std::abs(values[a]) - 1.0);
        for (std::size_t b = a; b < s.size(); ++b)
            worst = std::max(worst, std::abs(values[s.add(a, b)] - values[a] * values[b]));
    }
    return worst;
}

/// Restrictions of the characters of the semigroup algebra to the deltas.
inline std::vector<Semicharacter> semicharacters(const Semigroup& s, std::uint64_t seed = kDefaultCharacterSeed,
                                                 const Tolerances& tol = default_tolerances()) {
    const Algebra a = semigroup_algebra(s);
    std::vector<Semicharacter> out;
    for (const Character& phi : characters(a, seed, tol)) {
        // phi(delta_a) is the a-th entry of the functional.
        Semicharacter sc{phi.functional};
        if (semicharacter_defect(s, sc.values) > tol.character) {
            throw ConvergenceFailure("semicharacters: restricted character fails the semicharacter invariants");
        }
        out.push_back(std::move(sc));
    }
    return out;
}

/// phi(f) = sum_a Phi(a) f(a). Throws InvalidArgument if Phi is not a semicharacter.
inline Character character_from_semicharacter(const Semigroup& s, const Semicharacter& phi,
                                              const Tolerances& tol = default_tolerances()) {
    const double defect = semicharacter_defect(s, phi.values);
    if (defect > tol.character) {
        throw InvalidArgument("character_from_semicharacter: not a semicharacter (defect " + std::to_string(defect) +
                              ")");
    }
    return Character{phi.values};
}

} // namespace fdalg
