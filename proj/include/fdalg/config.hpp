#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace fdalg {

/// Name of the environment variable that scales every default tolerance.
inline constexpr const char* kToleranceScaleEnv = "FDALG_TOLERANCE_SCALE";

/// Every numerical threshold used by the library, in one place.
///
/// The underlying mathematics is exact; these values are the only points where
/// floating point enters a yes/no decision, so they are kept together and
/// passed explicitly to every operation that needs one.
struct Tolerances {
    /// |pivot| (or singular value) <= tol_rank * max|entry| counts as zero.
    double rank = 1e-10;
    /// Accepted residual of a linear solve, relative to max(1, |b|).
    double solve = 1e-8;
    /// Orthonormality slack for basis matrices.
    double orth = 1e-12;
    /// Eigenvalue residual: sigma_min(M - lambda I) <= eig * |M|.
    double eig = 1e-10;
    /// Algebra axiom violations (commutativity, associativity, identity law).
    double axiom = 1e-10;
    /// Character invariants and vanishing tests.
    double character = 1e-8;
    /// Merge distance for spectrum values and duplicate characters.
    double dedup = 1e-7;
    /// Subspace containment / equality residuals for ideals.
    double ideal = 1e-8;
    /// Backward-error level used to widen eigenvalue clusters coming from
    /// defective (non-semisimple) blocks: a cluster of k values may spread
    /// up to cluster_backward_error^(1/k) times the matrix scale.
    double cluster_backward_error = 1e-12;
    /// QR sweeps allowed per eigenvalue before ConvergenceFailure.
    int eig_max_iterations = 80;
    /// Random probes tried by the character search.
    int probe_retries = 8;

    [[nodiscard]] Tolerances scaled(double factor) const {
        Tolerances t = *this;
        t.rank *= factor;
        t.solve *= factor;
        t.orth *= factor;
        t.eig *= factor;
        t.axiom *= factor;
        t.character *= factor;
        t.dedup *= factor;
        t.ideal *= factor;
        t.cluster_backward_error *= factor;
        return t;
    }
};

/// Parses a tolerance scale factor; accepts finite values in (0, 1e6].
inline double parse_tolerance_scale(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(kToleranceScaleEnv) + " is not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value) || value <= 0.0 || value > 1e6) {
        throw InvalidArgument(std::string(kToleranceScaleEnv) +
                              " must be a finite number in (0, 1e6], got '" + text + "'");
    }
    return value;
}

/// Defaults, scaled by FDALG_TOLERANCE_SCALE when that variable is set.
/// Throws InvalidArgument for a malformed value.
inline Tolerances default_tolerances() {
    const char* env = std::getenv(kToleranceScaleEnv);
    if (env == nullptr || *env == '\0') {
        return Tolerances{};
    }
    return Tolerances{}.scaled(parse_tolerance_scale(env));
}

} // namespace fdalg
