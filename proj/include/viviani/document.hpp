#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "viviani/errors.hpp"
#include "viviani/fermat.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/vector.hpp"

namespace viviani {

// Normals further than this from unit length are rejected on ingest ...
inline constexpr double kIngestNormReject = 1e-6;
// ... and those further than this (but within the reject bound) are rescaled with a warning.
inline constexpr double kIngestNormRenormalize = 1e-9;

// Raw polygon vertices as written in a document. Convexity and orientation
// are checked only when the polygon is used (see ConvexPolygon).
struct PolygonVertices {
    std::vector<VectorN> vertices;
    friend bool operator==(const PolygonVertices&, const PolygonVertices&) = default;
};

// The JSON interchange document:
//
//   {
//     "dimension": n,
//     "planes":  [{"normal": [..n..], "offset": c}, ...]     -- exactly one of
//     "polygon": {"vertices": [[x, y], ...]}                   -- these three
//     "points":  [[..n..], ...]                                --
//     "metadata": {"key": "string value", ...}                 -- optional
//   }
struct ConfigDocument {
    std::size_t dimension = 0;
    std::variant<HyperplaneSet, PolygonVertices, PointSet> content;
    std::map<std::string, std::string> metadata;
    // Ingest notices such as normal rescaling; not part of the document model.
    std::vector<std::string> warnings;

    bool has_planes() const { return std::holds_alternative<HyperplaneSet>(content); }
    bool has_polygon() const { return std::holds_alternative<PolygonVertices>(content); }
    bool has_points() const { return std::holds_alternative<PointSet>(content); }

    friend bool operator==(const ConfigDocument& a, const ConfigDocument& b) {
        return a.dimension == b.dimension && a.content == b.content && a.metadata == b.metadata;
    }
};

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::SchemaError, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline std::vector<double> read_numbers(const json& j, const std::string& path, std::size_t expected) {
    if (!j.is_array()) schema_error(path, "expected an array of numbers");
    if (j.size() != expected) {
        schema_error(path, "expected " + std::to_string(expected) + " numbers, got " + std::to_string(j.size()));
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) schema_error(path + "/" + std::to_string(i), "expected a number");
        const double v = j[i].get<double>();
        if (!std::isfinite(v)) schema_error(path + "/" + std::to_string(i), "number is not finite");
        out.push_back(v);
    }
    return out;
}

inline std::vector<VectorN> read_point_list(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array() || j.empty()) schema_error(path, "expected a nonempty array of points");
    std::vector<VectorN> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.emplace_back(read_numbers(j[i], path + "/" + std::to_string(i), dim));
    }
    return out;
}

inline HyperplaneSet read_planes(const json& j, std::size_t dim, std::vector<std::string>& warnings) {
    if (!j.is_array() || j.empty()) schema_error("/planes", "expected a nonempty array of planes");
    std::vector<OrientedHyperplane> planes;
    planes.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "/planes/" + std::to_string(i);
        const json& p = j[i];
        if (!p.is_object()) schema_error(path, "expected an object");
        for (const auto& [key, _] : p.items()) {
            if (key != "normal" && key != "offset") schema_error(path, "unknown key '" + key + "'");
        }
        if (!p.contains("normal")) schema_error(path, "missing 'normal'");
        if (!p.contains("offset")) schema_error(path, "missing 'offset'");
        VectorN normal(read_numbers(p["normal"], path + "/normal", dim));
        if (!p["offset"].is_number()) schema_error(path + "/offset", "expected a number");
        const double offset = p["offset"].get<double>();
        if (!std::isfinite(offset)) schema_error(path + "/offset", "number is not finite");
        const double len = normal.norm();
        if (std::abs(len - 1.0) > kIngestNormReject) {
            throw Error(ErrorCode::NormTolerance,
                        path + "/normal: length " + std::to_string(len) + " is not within 1e-6 of 1");
        }
        if (std::abs(len - 1.0) > kIngestNormRenormalize) {
            warnings.push_back(path + "/normal: length differs from 1 by " + std::to_string(std::abs(len - 1.0)) +
                               "; renormalized");
            normal = normal / len;
        }
        planes.emplace_back(std::move(normal), offset);
    }
    return HyperplaneSet(std::move(planes));
}

}  // namespace detail

// Parses and validates a document. Syntax errors carry line and column;
// schema errors carry a JSON pointer to the offending value.
inline ConfigDocument parse_document(std::string_view text) {
    using detail::json;
    using detail::schema_error;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = detail::line_column(text, byte);
        throw Error(ErrorCode::SyntaxError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    } catch (const json::exception& e) {
        // number literals outside the double range
        throw Error(ErrorCode::SyntaxError, e.what());
    }
    if (!root.is_object()) schema_error("", "document must be a JSON object");
    for (const auto& [key, _] : root.items()) {
        if (key != "dimension" && key != "planes" && key != "polygon" && key != "points" && key != "metadata") {
            schema_error("", "unknown key '" + key + "'");
        }
    }
    if (!root.contains("dimension")) schema_error("", "missing 'dimension'");
    const json& dim_json = root["dimension"];
    if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) {
        schema_error("/dimension", "expected a positive integer");
    }
    ConfigDocument doc{static_cast<std::size_t>(dim_json.get<long long>()), PolygonVertices{}, {}, {}};

    const int present = static_cast<int>(root.contains("planes")) + static_cast<int>(root.contains("polygon")) +
                        static_cast<int>(root.contains("points"));
    if (present != 1) schema_error("", "exactly one of 'planes', 'polygon', 'points' must be present");

    if (root.contains("planes")) {
        doc.content = detail::read_planes(root["planes"], doc.dimension, doc.warnings);
    } else if (root.contains("polygon")) {
        if (doc.dimension != 2) schema_error("/dimension", "a polygon document must have dimension 2");
        const json& poly = root["polygon"];
        if (!poly.is_object() || !poly.contains("vertices") || poly.size() != 1) {
            schema_error("/polygon", "expected {\"vertices\": [...]}");
        }
        doc.content = PolygonVertices{detail::read_point_list(poly["vertices"], "/polygon/vertices", 2)};
    } else {
        doc.content = PointSet(detail::read_point_list(root["points"], "/points", doc.dimension));
    }

    if (root.contains("metadata")) {
        const json& meta = root["metadata"];
        if (!meta.is_object()) schema_error("/metadata", "expected an object of strings");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) schema_error("/metadata/" + key, "expected a string");
            doc.metadata.emplace(key, value.get<std::string>());
        }
    }
    return doc;
}

inline nlohmann::ordered_json to_json(const ConfigDocument& doc) {
    using ojson = nlohmann::ordered_json;
    const auto coords = [](const VectorN& v) {
        ojson a = ojson::array();
        for (double c : v) a.push_back(c);
        return a;
    };
    ojson root;
    root["dimension"] = doc.dimension;
    if (const auto* planes = std::get_if<HyperplaneSet>(&doc.content)) {
        ojson arr = ojson::array();
        for (const auto& p : *planes) {
            ojson entry;
            entry["normal"] = coords(p.normal());
            entry["offset"] = p.offset();
            arr.push_back(std::move(entry));
        }
        root["planes"] = std::move(arr);
    } else if (const auto* poly = std::get_if<PolygonVertices>(&doc.content)) {
        ojson arr = ojson::array();
        for (const auto& v : poly->vertices) arr.push_back(coords(v));
        root["polygon"]["vertices"] = std::move(arr);
    } else {
        ojson arr = ojson::array();
        for (const auto& p : std::get<PointSet>(doc.content)) arr.push_back(coords(p));
        root["points"] = std::move(arr);
    }
    if (!doc.metadata.empty()) {
        ojson meta = ojson::object();
        for (const auto& [k, v] : doc.metadata) meta[k] = v;
        root["metadata"] = std::move(meta);
    }
    return root;
}

// Two-space indented JSON with a trailing newline. Numbers use the shortest
// representation that round-trips to the same double.
inline std::string serialize_document(const ConfigDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline ConfigDocument make_document(HyperplaneSet planes, std::map<std::string, std::string> metadata = {}) {
    const std::size_t dim = planes.dim();
    return {dim, std::move(planes), std::move(metadata), {}};
}

inline ConfigDocument make_document(PointSet points, std::map<std::string, std::string> metadata = {}) {
    const std::size_t dim = points.dim();
    return {dim, std::move(points), std::move(metadata), {}};
}

inline ConfigDocument make_document(PolygonVertices polygon, std::map<std::string, std::string> metadata = {}) {
    return {2, std::move(polygon), std::move(metadata), {}};
}

}  // namespace viviani
