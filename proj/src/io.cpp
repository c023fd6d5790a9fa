#include "extremal/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace extremal {

using nlohmann::json;

namespace {

Vector read_vector(const json& j, std::size_t expected, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    if (j.size() != expected) {
        throw ParseError(std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " +
                         std::to_string(expected));
    }
    Vector v;
    v.reserve(expected);
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(std::string(what) + " must contain numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

}  // namespace

PolytopeH parse_polytope_json(std::string_view text, const Tolerances& tol, const Limits& limits) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("polytope document must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        throw ParseError("\"dim\" must be a positive integer");
    }
    const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());
    const bool has_h = doc.contains("halfspaces");
    const bool has_v = doc.contains("vertices");
    if (has_h == has_v) throw ParseError("exactly one of \"halfspaces\" and \"vertices\" is required");

    if (has_v) {
        if (dim != 2) throw ParseError("vertex input is supported only for dim 2");
        const json& pts = doc["vertices"];
        if (!pts.is_array()) throw ParseError("\"vertices\" must be an array");
        std::vector<Vector> points;
        for (const auto& p : pts) points.push_back(read_vector(p, 2, "vertex"));
        return from_vertices_2d(points, tol, limits);
    }

    const json& hsj = doc["halfspaces"];
    if (!hsj.is_array() || hsj.empty()) throw ParseError("\"halfspaces\" must be a nonempty array");
    std::vector<Halfspace> hs;
    for (const auto& h : hsj) {
        if (!h.is_object() || !h.contains("normal") || !h.contains("offset") || !h["offset"].is_number()) {
            throw ParseError("each halfspace needs \"normal\" and numeric \"offset\"");
        }
        hs.push_back({read_vector(h["normal"], dim, "normal"), h["offset"].get<double>()});
    }
    return validate(hs, dim, tol, limits);
}

PolytopeH load_polytope(const std::filesystem::path& path, const Tolerances& tol, const Limits& limits) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_polytope_json(ss.str(), tol, limits);
}

json polytope_to_json(const PolytopeH& k) {
    json hs = json::array();
    for (const auto& h : k.halfspaces()) hs.push_back({{"normal", h.normal}, {"offset", h.offset}});
    return {{"dim", k.dim()}, {"halfspaces", hs}};
}

json support_to_json(const Support& s) {
    if (const auto* simplex = std::get_if<SimplexSupport>(&s)) {
        const std::size_t d = simplex->simplex.dim();
        return {{"kind", "simplex"},
                {"facets", simplex->facet_indices},
                {"cross_dim", d},
                {"apexes", simplex->simplex.apexes},
                {"basis", matrix_rows(Matrix::identity(d))}};
    }
    const auto& strip = std::get<StripSupport>(s);
    return {{"kind", "strip"},
            {"facets", strip.facet_indices},
            {"cross_dim", strip.cross_dim},
            {"apexes", strip.cross_section.apexes},
            {"basis", matrix_rows(strip.basis)}};
}

json supports_to_json(const SupportSet& set) {
    json out = json::array();
    for (const auto& s : set.supports) out.push_back(support_to_json(s));
    return out;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace extremal
