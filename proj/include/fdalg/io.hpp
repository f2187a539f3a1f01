#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "algebra.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "semigroup.hpp"

namespace fdalg::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars and vectors

/// Shortest decimal text that reads back to the same double.
inline std::string number_text(double v) { return json(v).dump(); }

inline std::string scalar_text(Scalar z) { return "[" + number_text(z.real()) + ", " + number_text(z.imag()) + "]"; }

inline json scalar_to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

/// A real number when the imaginary part is exactly zero, otherwise [re, im].
inline json compact_scalar_to_json(Scalar z) {
    if (z.imag() == 0.0) return json(z.real());
    return scalar_to_json(z);
}

inline json vector_to_json(std::span<const Scalar> v, bool compact = false) {
    json out = json::array();
    for (Scalar z : v) out.push_back(compact ? compact_scalar_to_json(z) : scalar_to_json(z));
    return out;
}

/// Accepts a number or a two-element [re, im] array.
inline Scalar scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError(where + ": expected a number or an [re, im] pair");
}

inline Vector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    try {
        require_finite(v, where.c_str());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return v;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

/// Parses a vector given on the command line, e.g. "[1, [0, 2]]".
inline Vector parse_vector(const std::string& text, const std::string& source = "vector") {
    return vector_from_json(parse_json_text(text, source), source);
}

/// Parses a list of column vectors, e.g. "[[0,1,0],[0,0,1]]", into a dim x k matrix.
inline Matrix parse_columns(const std::string& text, std::size_t dim, const std::string& source = "basis") {
    const json j = parse_json_text(text, source);
    if (!j.is_array()) throw ParseError(source + ": expected an array of vectors");
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Vector v = vector_from_json(j[i], source + "[" + std::to_string(i) + "]");
        if (v.size() != dim) throw ParseError(source + ": vector " + std::to_string(i) + " has the wrong length");
        cols.push_back(std::move(v));
    }
    return Matrix::from_columns(dim, cols);
}

// ---------------------------------------------------------------------------
// Field access helpers

namespace detail {

inline const json& field(const json& doc, const char* key, const std::string& source) {
    if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(source + ": missing key '" + key + "'");
    return *it;
}

inline std::size_t count_field(const json& doc, const char* key, const std::string& source) {
    const json& v = field(doc, key, source);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(source + ": '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

inline std::vector<std::string> names_field(const json& doc, const char* key, const std::string& source) {
    std::vector<std::string> names;
    auto it = doc.find(key);
    if (it == doc.end()) return names;
    if (!it->is_array()) throw ParseError(source + ": '" + key + "' must be an array of strings");
    for (const json& n : *it) {
        if (!n.is_string()) throw ParseError(source + ": '" + key + "' must be an array of strings");
        names.push_back(n.get<std::string>());
    }
    return names;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open file for writing");
    out << text;
    if (!out) throw Error(path + ": write failed");
}

inline std::string quoted(const std::string& s) { return json(s).dump(); }

} // namespace detail

// ---------------------------------------------------------------------------
// Algebra files

inline bool is_semigroup_document(const json& doc) { return doc.is_object() && doc.contains("table"); }

/// Builds an Algebra from a parsed document; shape errors raise ParseError.
inline Algebra algebra_from_json(const json& doc, const std::string& source = "algebra") {
    const std::size_t dim = detail::count_field(doc, "dim", source);
    if (dim == 0) throw ParseError(source + ": 'dim' must be positive");
    const json& sc = detail::field(doc, "structure_constants", source);
    Vector c;
    c.reserve(dim * dim * dim);
    if (!sc.is_array() || sc.size() != dim) throw ParseError(source + ": structure_constants must have dim entries");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!sc[i].is_array() || sc[i].size() != dim) {
            throw ParseError(source + ": structure_constants[" + std::to_string(i) + "] must have dim entries");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            const std::string where = source + ": structure_constants[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            Vector row = vector_from_json(sc[i][j], where);
            if (row.size() != dim) throw ParseError(where + " must have dim entries");
            c.insert(c.end(), row.begin(), row.end());
        }
    }
    Vector identity = vector_from_json(detail::field(doc, "identity", source), source + ": identity");
    if (identity.size() != dim) throw ParseError(source + ": identity must have dim entries");
    std::vector<std::string> names = detail::names_field(doc, "basis_names", source);
    if (!names.empty() && names.size() != dim) throw ParseError(source + ": basis_names must have dim entries");

    AlgebraTags tags;
    for (const std::string& t : detail::names_field(doc, "tags", source)) {
        if (t == "function_algebra") tags.function_algebra = true;
        else if (t == "semigroup_algebra") tags.semigroup_algebra = true;
        else throw ParseError(source + ": unknown tag '" + t + "'");
    }
    return Algebra(dim, std::move(c), std::move(identity), std::move(names), tags);
}

/// Parses and, unless `validate` is false, checks the algebra axioms.
inline Algebra parse_algebra(const std::string& text, const std::string& source = "algebra", bool validate = true,
                             const Tolerances& tol = default_tolerances()) {
    Algebra a = [&] {
        try {
            return algebra_from_json(parse_json_text(text, source), source);
        } catch (const json::exception& e) {
            throw ParseError(source + ": " + e.what());
        }
    }();
    if (validate) {
        if (const ValidationReport r = validate_algebra(a, tol); !r.passed()) {
            throw ValidationError(source + ": " + r.describe_first_failure());
        }
    }
    return a;
}

inline Algebra load_algebra(const std::string& path, bool validate = true, const Tolerances& tol = default_tolerances()) {
    return parse_algebra(detail::read_file(path), path, validate, tol);
}

/// Human-readable text: one line per (i, j) row of structure constants.
inline std::string algebra_to_text(const Algebra& a) {
    const std::size_t n = a.dim();
    std::ostringstream os;
    os << "{\n  \"dim\": " << n << ",\n  \"basis_names\": [";
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << detail::quoted(a.basis_names()[i]);
    os << "],\n";
    std::vector<std::string> tags;
    if (a.tags().function_algebra) tags.emplace_back("function_algebra");
    if (a.tags().semigroup_algebra) tags.emplace_back("semigroup_algebra");
    if (!tags.empty()) {
        os << "  \"tags\": [";
        for (std::size_t i = 0; i < tags.size(); ++i) os << (i ? ", " : "") << detail::quoted(tags[i]);
        os << "],\n";
    }
    os << "  \"identity\": [";
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << scalar_text(a.identity()[i]);
    os << "],\n  \"structure_constants\": [\n";
    for (std::size_t i = 0; i < n; ++i) {
        os << "    [\n";
        for (std::size_t j = 0; j < n; ++j) {
            os << "      [";
            for (std::size_t k = 0; k < n; ++k) os << (k ? ", " : "") << scalar_text(a.c(i, j, k));
            os << "]" << (j + 1 < n ? "," : "") << "\n";
        }
        os << "    ]" << (i + 1 < n ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

inline void save_algebra(const std::string& path, const Algebra& a) { detail::write_file(path, algebra_to_text(a)); }

// ---------------------------------------------------------------------------
// Semigroup files

inline Semigroup semigroup_from_json(const json& doc, const std::string& source = "semigroup") {
    const std::size_t size = detail::count_field(doc, "size", source);
    if (size == 0) throw ParseError(source + ": 'size' must be positive");
    const json& table = detail::field(doc, "table", source);
    if (!table.is_array() || table.size() != size) throw ParseError(source + ": table must have size rows");
    std::vector<std::size_t> t;
    t.reserve(size * size);
    for (std::size_t a = 0; a < size; ++a) {
        if (!table[a].is_array() || table[a].size() != size) {
            throw ParseError(source + ": table row " + std::to_string(a) + " must have size entries");
        }
        for (std::size_t b = 0; b < size; ++b) {
            const json& v = table[a][b];
            if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<std::size_t>() >= size) {
                throw ParseError(source + ": table[" + std::to_string(a) + "][" + std::to_string(b) +
                                 "] must be an element index below size");
            }
            t.push_back(v.get<std::size_t>());
        }
    }
    const std::size_t identity = detail::count_field(doc, "identity_index", source);
    if (identity >= size) throw ParseError(source + ": identity_index out of range");
    std::vector<std::string> names = detail::names_field(doc, "names", source);
    if (!names.empty() && names.size() != size) throw ParseError(source + ": names must have size entries");
    return Semigroup(size, std::move(t), identity, std::move(names));
}

inline Semigroup parse_semigroup(const std::string& text, const std::string& source = "semigroup", bool validate = true) {
    Semigroup s = [&] {
        try {
            return semigroup_from_json(parse_json_text(text, source), source);
        } catch (const json::exception& e) {
            throw ParseError(source + ": " + e.what());
        }
    }();
    if (validate) {
        if (const ValidationReport r = validate_semigroup(s); !r.passed()) {
            throw ValidationError(source + ": " + r.describe_first_failure());
        }
    }
    return s;
}

inline Semigroup load_semigroup(const std::string& path, bool validate = true) {
    return parse_semigroup(detail::read_file(path), path, validate);
}

inline std::string semigroup_to_text(const Semigroup& s) {
    const std::size_t n = s.size();
    std::ostringstream os;
    os << "{\n  \"size\": " << n << ",\n  \"names\": [";
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << detail::quoted(s.names()[i]);
    os << "],\n  \"identity_index\": " << s.identity() << ",\n  \"table\": [\n";
    for (std::size_t a = 0; a < n; ++a) {
        os << "    [";
        for (std::size_t b = 0; b < n; ++b) os << (b ? ", " : "") << s.add(a, b);
        os << "]" << (a + 1 < n ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

inline void save_semigroup(const std::string& path, const Semigroup& s) { detail::write_file(path, semigroup_to_text(s)); }

} // namespace fdalg::io
