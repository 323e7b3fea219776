#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "viviani/document.hpp"
#include "viviani/duality.hpp"
#include "viviani/errors.hpp"
#include "viviani/fermat.hpp"
#include "viviani/format.hpp"
#include "viviani/polytope.hpp"

namespace viviani {

inline constexpr double kSvgSize = 800.0;
inline constexpr double kSvgPadding = 0.1;

namespace detail {

// World-to-pixel map: the bounding square of the content fills the middle
// 80% of the viewport, y pointing up.
class SvgFrame {
public:
    explicit SvgFrame(const std::vector<VectorN>& extent) {
        double xmin = extent.front()[0], xmax = xmin, ymin = extent.front()[1], ymax = ymin;
        for (const auto& p : extent) {
            xmin = std::min(xmin, p[0]);
            xmax = std::max(xmax, p[0]);
            ymin = std::min(ymin, p[1]);
            ymax = std::max(ymax, p[1]);
        }
        cx_ = (xmin + xmax) / 2.0;
        cy_ = (ymin + ymax) / 2.0;
        size_ = std::max(xmax - xmin, ymax - ymin);
        if (size_ < 1e-9) size_ = 2.0;
        scale_ = kSvgSize * (1.0 - 2.0 * kSvgPadding) / size_;
    }

    double size() const { return size_; }
    double px(const VectorN& p) const { return kSvgSize / 2.0 + (p[0] - cx_) * scale_; }
    double py(const VectorN& p) const { return kSvgSize / 2.0 - (p[1] - cy_) * scale_; }
    std::string xy(const VectorN& p) const { return format_fixed(px(p), 3) + "," + format_fixed(py(p), 3); }
    VectorN center() const { return VectorN{cx_, cy_}; }

private:
    double cx_ = 0.0, cy_ = 0.0, size_ = 1.0, scale_ = 1.0;
};

inline std::string svg_line(const SvgFrame& f, const VectorN& a, const VectorN& b, const std::string& attrs) {
    return "  <line x1=\"" + format_fixed(f.px(a), 3) + "\" y1=\"" + format_fixed(f.py(a), 3) + "\" x2=\"" +
           format_fixed(f.px(b), 3) + "\" y2=\"" + format_fixed(f.py(b), 3) + "\" " + attrs + "/>\n";
}

inline std::string svg_arrow(const SvgFrame& f, const VectorN& base, const VectorN& unit_dir) {
    return svg_line(f, base, base + 0.12 * f.size() * unit_dir,
                    "stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#arrow)\"");
}

inline std::string svg_dot(const SvgFrame& f, const VectorN& p, const std::string& fill) {
    return "  <circle cx=\"" + format_fixed(f.px(p), 3) + "\" cy=\"" + format_fixed(f.py(p), 3) +
           "\" r=\"4\" fill=\"" + fill + "\"/>\n";
}

inline std::string svg_document(const std::string& body) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n"
           "  <defs>\n"
           "    <clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"800\" height=\"800\"/></clipPath>\n"
           "    <marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"10\" refX=\"8\" refY=\"5\" "
           "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker>\n"
           "  </defs>\n"
           "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n" +
           body + "</svg>\n";
}

}  // namespace detail

// SVG 1.1 drawing of a 2-D document: lines with their unit normals, a polygon
// with outward edge normals, or points with their geometric median and the
// spokes to it. Output depends only on the document.
inline std::string render_svg(const ConfigDocument& doc) {
    using detail::SvgFrame;
    if (doc.dimension != 2) throw Error(ErrorCode::DimensionMismatch, "plots are 2-D only");

    std::vector<VectorN> extent;
    std::string body;
    if (const auto* planes = std::get_if<HyperplaneSet>(&doc.content)) {
        for (const auto& p : *planes) extent.push_back(p.offset() * p.normal());
        extent.push_back(VectorN::zero(2));
        const SvgFrame f(extent);
        body += "  <g clip-path=\"url(#view)\">\n";
        for (const auto& p : *planes) {
            const VectorN foot = p.offset() * p.normal();
            const VectorN along{-p.normal()[1], p.normal()[0]};
            const double reach = 4.0 * f.size() + foot.distance(f.center());
            body += detail::svg_line(f, foot - reach * along, foot + reach * along,
                                     "stroke=\"#2c3e50\" stroke-width=\"1.5\"");
        }
        body += "  </g>\n";
        for (const auto& p : *planes) body += detail::svg_arrow(f, p.offset() * p.normal(), p.normal());
        return detail::svg_document(body);
    }

    if (const auto* poly = std::get_if<PolygonVertices>(&doc.content)) {
        const ConvexPolygon polygon(poly->vertices);
        extent.assign(polygon.vertices().begin(), polygon.vertices().end());
        const SvgFrame f(extent);
        body += "  <polygon points=\"";
        for (std::size_t i = 0; i < polygon.size(); ++i) body += (i ? " " : "") + f.xy(polygon[i]);
        body += "\" fill=\"#ecf0f1\" stroke=\"#2c3e50\" stroke-width=\"1.5\"/>\n";
        const HyperplaneSet edges = polygon_to_hyperplanes(polygon);
        for (std::size_t i = 0; i < polygon.size(); ++i) {
            const VectorN mid = (polygon[i] + polygon[(i + 1) % polygon.size()]) / 2.0;
            body += detail::svg_arrow(f, mid, edges[i].normal());
        }
    } else {
        const auto& pts = std::get<PointSet>(doc.content);
        extent.assign(pts.begin(), pts.end());
        const MedianResult m = geometric_median(pts);
        const SvgFrame f(extent);
        for (const auto& p : pts) {
            body += detail::svg_line(f, m.point, p, "stroke=\"#7f8c8d\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
        }
        for (const auto& p : pts) body += detail::svg_dot(f, p, "#2c3e50");
        body += detail::svg_dot(f, m.point, "#c0392b");
    }
    return detail::svg_document(body);
}

}  // namespace viviani
