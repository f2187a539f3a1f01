#pragma once

// Named catalog of algebras and semigroups shared by the unit and acceptance tests.

#include <complex>
#include <string>
#include <vector>

#include "fdalg/fdalg.hpp"

namespace fdalg::testing {

struct NamedSemigroup {
    std::string name;
    Semigroup semigroup;
};

struct NamedAlgebra {
    std::string name;
    Algebra algebra;
    std::size_t distinct_roots = 0; // character count, when known in closed form
};

struct NamedPolynomial {
    std::string name;
    Vector coefficients;          // ascending, monic
    std::vector<Scalar> roots;    // distinct roots
    std::vector<std::size_t> multiplicities;
};

inline std::vector<NamedSemigroup> semigroup_catalog() {
    std::vector<NamedSemigroup> out;
    for (std::size_t n = 1; n <= 6; ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
    for (std::size_t k = 1; k <= 4; ++k) out.push_back({"chain" + std::to_string(k), max_chain(k)});
    for (std::size_t k = 1; k <= 4; ++k) out.push_back({"trunc" + std::to_string(k), truncation_monoid(k)});
    out.push_back({"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))});
    out.push_back({"Z2xZ3", direct_product(cyclic_group(2), cyclic_group(3))});
    out.push_back({"Z3xZ4", direct_product(cyclic_group(3), cyclic_group(4))});
    out.push_back({"Z2xZ6", direct_product(cyclic_group(2), cyclic_group(6))});
    out.push_back({"Z2xZ2xZ3", direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(3))});
    out.push_back({"chain1xZ3", direct_product(max_chain(1), cyclic_group(3))});
    out.push_back({"trunc2xZ2", direct_product(truncation_monoid(2), cyclic_group(2))});
    out.push_back({"trunc3xZ2", direct_product(truncation_monoid(3), cyclic_group(2))});
    out.push_back({"chain2xtrunc2", direct_product(max_chain(2), truncation_monoid(2))});
    out.push_back({"trunc1xtrunc2", direct_product(truncation_monoid(1), truncation_monoid(2))});
    return out;
}

/// Expands prod (t - r)^m into ascending coefficients.
inline Vector expand_roots(const std::vector<Scalar>& roots, const std::vector<std::size_t>& mult) {
    Vector p{1.0};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t m = 0; m < mult[i]; ++m) {
            Vector q(p.size() + 1, 0.0);
            for (std::size_t k = 0; k < p.size(); ++k) {
                q[k + 1] += p[k];
                q[k] -= roots[i] * p[k];
            }
            p = std::move(q);
        }
    }
    return p;
}

inline std::vector<NamedPolynomial> polynomial_catalog() {
    using namespace std::complex_literals;
    const Scalar w3 = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
    const Scalar w5 = std::polar(1.0, 2.0 * 3.14159265358979323846 / 5.0);
    struct Recipe {
        std::string name;
        std::vector<Scalar> roots;
        std::vector<std::size_t> mult;
    };
    const std::vector<Recipe> recipes = {
        {"t", {0.0}, {1}},
        {"t^2", {0.0}, {2}},
        {"t^2-1", {1.0, -1.0}, {1, 1}},
        {"t^2+1", {1i, -1i}, {1, 1}},
        {"(t-1)(t-i)", {1.0, 1i}, {1, 1}},
        {"t^3", {0.0}, {3}},
        {"t^3-1", {1.0, w3, w3 * w3}, {1, 1, 1}},
        {"t^3-t", {0.0, 1.0, -1.0}, {1, 1, 1}},
        {"(t-1)^2(t+1)", {1.0, -1.0}, {2, 1}},
        {"t^4", {0.0}, {4}},
        {"t^4-1", {1.0, 1i, -1.0, -1i}, {1, 1, 1, 1}},
        {"t^2(t-1)^2", {0.0, 1.0}, {2, 2}},
        {"(t-2)^3(t+i)", {2.0, -1i}, {3, 1}},
        {"t^5", {0.0}, {5}},
        {"t^5-1", {1.0, w5, w5 * w5, w5 * w5 * w5, w5 * w5 * w5 * w5}, {1, 1, 1, 1, 1}},
        {"(t-1)^3(t+2)^2", {1.0, -2.0}, {3, 2}},
        {"t(t-1)(t+1)(t-2)(t+2)", {0.0, 1.0, -1.0, 2.0, -2.0}, {1, 1, 1, 1, 1}},
        {"t^2(t-i)^2(t+1)", {0.0, 1i, -1.0}, {2, 2, 1}},
    };
    std::vector<NamedPolynomial> out;
    for (const Recipe& s : recipes) out.push_back({s.name, expand_roots(s.roots, s.mult), s.roots, s.mult});
    return out;
}

/// Function algebras n <= 6, catalog semigroup algebras and polynomial quotients of degree <= 5.
inline std::vector<NamedAlgebra> algebra_catalog() {
    std::vector<NamedAlgebra> out;
    for (std::size_t n = 1; n <= 6; ++n) out.push_back({"fn" + std::to_string(n), function_algebra(n), n});
    for (auto& s : semigroup_catalog()) out.push_back({"C[" + s.name + "]", semigroup_algebra(s.semigroup), 0});
    for (auto& p : polynomial_catalog())
        out.push_back({"C[t]/(" + p.name + ")", polynomial_quotient_algebra(p.coefficients), p.roots.size()});
    return out;
}

} // namespace fdalg::testing
