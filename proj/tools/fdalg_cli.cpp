// Command-line front end: every library operation plus the invariant suite.
//
// Exit codes: 0 for any completed computation (including NOT_INVERTIBLE),
// 1 when validation or a check fails, 2 for usage, parse and I/O errors.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdalg/fdalg.hpp"

namespace {

using fdalg::io::json;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : fdalg::Error {
    using fdalg::Error::Error;
};

/// Rounds away floating-point dust so that printed results are stable and readable.
double chop(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

fdalg::Scalar chop(fdalg::Scalar z) { return {chop(z.real()), chop(z.imag())}; }

ojson out_scalar(fdalg::Scalar z) {
    z = chop(z);
    if (z.imag() == 0.0) return z.real();
    return ojson::array({z.real(), z.imag()});
}

ojson out_vector(std::span<const fdalg::Scalar> v) {
    ojson arr = ojson::array();
    for (fdalg::Scalar z : v) arr.push_back(out_scalar(z));
    return arr;
}

ojson out_matrix_columns(const fdalg::Matrix& m) {
    ojson cols = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(out_vector(m.column(j)));
    return cols;
}

void print(const ojson& j) { std::cout << j.dump(2) << "\n"; }

json parse_doc(const std::string& path) {
    return fdalg::io::parse_json_text(fdalg::io::detail::read_file(path), path);
}

fdalg::Element element_for(const fdalg::Algebra& a, const std::string& text) {
    fdalg::Vector v = fdalg::io::parse_vector(text, "--element");
    if (v.size() != a.dim()) {
        throw UsageError("--element has " + std::to_string(v.size()) + " coordinates, algebra has dimension " +
                         std::to_string(a.dim()));
    }
    return fdalg::Element(std::move(v));
}

fdalg::NormKind norm_from(const std::string& name) {
    auto k = fdalg::parse_norm_kind(name);
    if (!k) throw UsageError("unknown norm '" + name + "' (expected sup, l1 or coordinate-l1)");
    return *k;
}

ojson report_to_json(const fdalg::ValidationReport& r) {
    ojson checks = ojson::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"axiom", c.axiom}, {"passed", c.passed}, {"max_violation", c.max_violation},
                          {"indices", c.indices}});
    }
    return checks;
}

ojson character_to_json(const fdalg::Character& c) { return ojson{{"functional", out_vector(c.functional)}}; }

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const fdalg::Tolerances& tol) {
    const json doc = parse_doc(path);
    fdalg::ValidationReport r;
    std::string kind;
    try {
        if (fdalg::io::is_semigroup_document(doc)) {
            kind = "semigroup";
            r = fdalg::validate_semigroup(fdalg::io::semigroup_from_json(doc, path));
        } else {
            kind = "algebra";
            r = fdalg::validate_algebra(fdalg::io::algebra_from_json(doc, path), tol);
        }
    } catch (const json::exception& e) {
        throw fdalg::ParseError(path + ": " + e.what());
    }
    print({{"kind", kind}, {"valid", r.passed()}, {"checks", report_to_json(r)}});
    return r.passed() ? kExitOk : kExitFailed;
}

int cmd_spectrum(const std::string& path, const std::string& element, const fdalg::Tolerances& tol) {
    const fdalg::Algebra a = fdalg::io::load_algebra(path, true, tol);
    const fdalg::Spectrum s = fdalg::spectrum(a, element_for(a, element), tol);
    print({{"values", out_vector(s.values)}, {"multiplicities", s.multiplicities}});
    return kExitOk;
}

int cmd_characters(const std::string& path, std::uint64_t seed, const fdalg::Tolerances& tol) {
    const fdalg::Algebra a = fdalg::io::load_algebra(path, true, tol);
    ojson list = ojson::array();
    for (const auto& c : fdalg::characters(a, seed, tol)) list.push_back(character_to_json(c));
    print({{"characters", list}});
    return kExitOk;
}

int cmd_maximal_ideals(const std::string& path, std::uint64_t seed, const fdalg::Tolerances& tol) {
    const fdalg::Algebra a = fdalg::io::load_algebra(path, true, tol);
    ojson list = ojson::array();
    for (const auto& phi : fdalg::characters(a, seed, tol)) {
        const fdalg::Ideal m = fdalg::character_kernel(a, phi, tol);
        list.push_back({{"dim", m.dim()}, {"character", out_vector(phi.functional)}, {"basis", out_matrix_columns(m.basis())}});
    }
    print({{"maximal_ideals", list}});
    return kExitOk;
}

int cmd_quotient(const std::string& path, const std::string& ideal_text, const fdalg::Tolerances& tol) {
    const fdalg::Algebra a = fdalg::io::load_algebra(path, true, tol);
    const fdalg::Matrix spanning = fdalg::io::parse_columns(ideal_text, a.dim(), "--ideal");
    const fdalg::Ideal ideal = fdalg::Ideal::spanned_by(a.dim(), spanning, tol);
    if (ideal.dim() != spanning.cols()) throw UsageError("--ideal: basis vectors are linearly dependent");
    const fdalg::QuotientResult q = fdalg::quotient(a, ideal, tol);
    std::cout << fdalg::io::algebra_to_text(q.quotient);
    return kExitOk;
}

struct InvertArgs {
    std::string element;
    bool neumann = false;
    std::string lambda = "1";
    std::string norm = "coordinate-l1";
    double tol = 1e-10;
    std::uint64_t seed = fdalg::kDefaultCharacterSeed;
};

int cmd_invert(const std::string& path, const InvertArgs& args, const fdalg::Tolerances& tol) {
    const fdalg::Algebra a = fdalg::io::load_algebra(path, true, tol);
    const fdalg::Element x = element_for(a, args.element);
    if (args.neumann) {
        const fdalg::Vector lam = fdalg::io::parse_vector("[" + args.lambda + "]", "--lambda");
        const fdalg::NeumannSeries ns = fdalg::neumann_inverse(a, norm_from(args.norm), lam.at(0), x, args.tol);
        print({{"result", "INVERTIBLE"},
               {"method", "neumann"},
               {"inverse_of", "lambda*e - x"},
               {"inverse", out_vector(ns.inverse.coords())},
               {"terms", ns.terms},
               {"ratio", ns.ratio},
               {"residual", ns.residual}});
        return kExitOk;
    }
    if (auto inv = fdalg::invert(a, x, tol)) {
        print({{"result", "INVERTIBLE"}, {"inverse", out_vector(inv->coords())}});
        return kExitOk;
    }
    const fdalg::Character w = fdalg::witness_noninvertible(fdalg::characters(a, args.seed, tol), x, tol);
    print({{"result", "NOT_INVERTIBLE"}, {"witness", character_to_json(w)}, {"witness_value", out_scalar(w(x))}});
    return kExitOk;
}

int cmd_semigroup_algebra(const std::string& path) {
    std::cout << fdalg::io::algebra_to_text(fdalg::semigroup_algebra(fdalg::io::load_semigroup(path)));
    return kExitOk;
}

int cmd_semicharacters(const std::string& path, std::uint64_t seed, const fdalg::Tolerances& tol) {
    const fdalg::Semigroup s = fdalg::io::load_semigroup(path);
    ojson rows = ojson::array();
    for (const auto& phi : fdalg::semicharacters(s, seed, tol)) rows.push_back(out_vector(phi.values));
    print({{"elements", s.names()}, {"semicharacters", rows}});
    return kExitOk;
}

int cmd_convolve(const std::string& path, const std::string& f1, const std::string& f2) {
    const fdalg::Semigroup s = fdalg::io::load_semigroup(path);
    const fdalg::Vector a = fdalg::io::parse_vector(f1, "--f1");
    const fdalg::Vector b = fdalg::io::parse_vector(f2, "--f2");
    if (a.size() != s.size() || b.size() != s.size()) throw UsageError("--f1/--f2 must have one entry per semigroup element");
    std::cout << out_vector(fdalg::convolve(s, a, b)).dump() << "\n";
    return kExitOk;
}

int cmd_check(const std::string& path, const std::optional<std::string>& norm, std::size_t trials, std::uint64_t seed,
              const fdalg::Tolerances& tol) {
    const json doc = parse_doc(path);
    fdalg::CheckOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    if (norm) opt.norm = norm_from(*norm);
    fdalg::CheckReport rep;
    std::string kind;
    try {
        if (fdalg::io::is_semigroup_document(doc)) {
            kind = "semigroup";
            rep = fdalg::check_semigroup(fdalg::io::semigroup_from_json(doc, path), opt, tol);
        } else {
            kind = "algebra";
            rep = fdalg::check_algebra(fdalg::io::algebra_from_json(doc, path), opt, tol);
        }
    } catch (const json::exception& e) {
        throw fdalg::ParseError(path + ": " + e.what());
    }
    ojson items = ojson::array();
    for (const auto& i : rep.items) {
        ojson item = {{"name", i.name}, {"passed", i.passed}, {"worst", i.worst}};
        if (!i.detail.empty()) item["detail"] = i.detail;
        items.push_back(item);
    }
    print({{"kind", kind}, {"trials", trials}, {"seed", seed}, {"passed", rep.passed()}, {"checks", items}});
    return rep.passed() ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fdalg: finite-dimensional commutative algebras, their characters, ideals and norms"};
    app.require_subcommand(1);

    std::string file, element, ideal, f1, f2, coeffs;
    std::uint64_t seed = fdalg::kDefaultCharacterSeed;
    std::uint64_t check_seed = 1;
    std::size_t trials = 100;
    std::size_t points = 0;
    std::optional<std::string> norm;
    InvertArgs inv;

    auto* validate = app.add_subcommand("validate", "Check the axioms of an algebra or semigroup file");
    validate->add_option("file", file, "Algebra or semigroup file")->required();

    auto* spec = app.add_subcommand("spectrum", "Spectrum of an element with multiplicities");
    spec->add_option("algebra", file)->required();
    spec->add_option("--element", element, "Coordinates as JSON, e.g. [0,1] or [[0,1],[2,0]]")->required();

    auto* chars = app.add_subcommand("characters", "All characters (multiplicative functionals)");
    chars->add_option("algebra", file)->required();
    chars->add_option("--seed", seed, "Seed of the random probe stream");

    auto* maxi = app.add_subcommand("maximal-ideals", "Maximal ideals as kernels of characters");
    maxi->add_option("algebra", file)->required();
    maxi->add_option("--seed", seed);

    auto* quot = app.add_subcommand("quotient", "Quotient algebra by an ideal");
    quot->add_option("algebra", file)->required();
    quot->add_option("--ideal", ideal, "Spanning vectors as JSON, e.g. [[0,1]]")->required();

    auto* invert = app.add_subcommand("invert", "Inverse of an element, or a vanishing character");
    invert->add_option("algebra", file)->required();
    invert->add_option("--element", inv.element)->required();
    invert->add_flag("--neumann", inv.neumann, "Invert lambda*e - x by the geometric series");
    invert->add_option("--lambda", inv.lambda, "Scalar lambda (number or [re,im])");
    invert->add_option("--norm", inv.norm, "sup, l1 or coordinate-l1");
    invert->add_option("--tol", inv.tol, "Series residual tolerance")->check(CLI::PositiveNumber);
    invert->add_option("--seed", inv.seed);

    auto* sgalg = app.add_subcommand("semigroup-algebra", "Convolution algebra of a semigroup, as an algebra file");
    sgalg->add_option("semigroup", file)->required();

    auto* semich = app.add_subcommand("semicharacters", "Semicharacters of a semigroup");
    semich->add_option("semigroup", file)->required();
    semich->add_option("--seed", seed);

    auto* conv = app.add_subcommand("convolve", "Convolution of two functions on a semigroup");
    conv->add_option("semigroup", file)->required();
    conv->add_option("--f1", f1)->required();
    conv->add_option("--f2", f2)->required();

    auto* check = app.add_subcommand("check", "Run the invariant suite; exit 0 iff clean");
    check->add_option("file", file)->required();
    check->add_option("--norm", norm, "sup, l1 or coordinate-l1");
    check->add_option("--trials", trials)->check(CLI::PositiveNumber);
    check->add_option("--seed", check_seed);

    auto* fnalg = app.add_subcommand("function-algebra", "Algebra of functions on n points");
    fnalg->add_option("n", points)->required()->check(CLI::PositiveNumber);

    auto* polyalg = app.add_subcommand("polynomial-algebra", "C[t]/(p) for monic p");
    polyalg->add_option("--coeffs", coeffs, "Ascending coefficients, e.g. [0,0,1] for t^2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const fdalg::Tolerances tol = fdalg::default_tolerances();
        if (*validate) return cmd_validate(file, tol);
        if (*spec) return cmd_spectrum(file, element, tol);
        if (*chars) return cmd_characters(file, seed, tol);
        if (*maxi) return cmd_maximal_ideals(file, seed, tol);
        if (*quot) return cmd_quotient(file, ideal, tol);
        if (*invert) return cmd_invert(file, inv, tol);
        if (*sgalg) return cmd_semigroup_algebra(file);
        if (*semich) return cmd_semicharacters(file, seed, tol);
        if (*conv) return cmd_convolve(file, f1, f2);
        if (*check) return cmd_check(file, norm, trials, check_seed, tol);
        if (*fnalg) {
            std::cout << fdalg::io::algebra_to_text(fdalg::function_algebra(points));
            return kExitOk;
        }
        if (*polyalg) {
            std::cout << fdalg::io::algebra_to_text(
                fdalg::polynomial_quotient_algebra(fdalg::io::parse_vector(coeffs, "--coeffs")));
            return kExitOk;
        }
    } catch (const fdalg::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const fdalg::NotProper& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const fdalg::NotAnIdeal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const fdalg::ConvergenceFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitFailed;
    } catch (const fdalg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
