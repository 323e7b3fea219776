#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "viviani/errors.hpp"
#include "viviani/fermat.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/polytope.hpp"
#include "viviani/vector.hpp"

namespace viviani {

// Foot of the perpendicular from P to the plane.
inline VectorN project_onto(const VectorN& point, const OrientedHyperplane& plane) {
    point.require_same_dim(plane.normal());
    return point + signed_distance(point, plane) * plane.normal();
}

// Fermat certificate accepted by fermat_to_viviani, per input point.
inline constexpr double kFermatCertificatePerPoint = 1e-6;

// Given a Fermat point P of the points P_i (distinct from all of them), the
// hyperplanes through each P_i perpendicular to P P_i, oriented away from P.
// Their unit normals cancel, so the set is Viviani, and the signed distance
// from P to each plane is |P_i - P|.
inline HyperplaneSet fermat_to_viviani(const PointSet& pts, const VectorN& fermat_point) {
    const VectorN pull = direction_sum_at(fermat_point, pts);
    const double limit = static_cast<double>(pts.size()) * kFermatCertificatePerPoint;
    if (pull.norm() > limit) {
        throw Error(ErrorCode::NotAFermatPoint,
                    "unit-direction sum has norm " + std::to_string(pull.norm()));
    }
    std::vector<OrientedHyperplane> planes;
    planes.reserve(pts.size());
    for (const auto& p : pts) planes.push_back(make_hyperplane_from_anchor(p - fermat_point, p));
    return HyperplaneSet(std::move(planes));
}

// Signed distances from P within this of zero count as either sign.
inline constexpr double kOneSidedSlack = 1e-12;

// For a Viviani set and a point P on one side of every plane, the feet of the
// perpendiculars from P. P is a Fermat point of the returned points.
inline PointSet viviani_to_fermat(const HyperplaneSet& set, const VectorN& point,
                                  double viviani_tol = kDefaultVivianiTolerance) {
    if (point.dim() != set.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "point and hyperplane set dimensions differ");
    }
    if (!is_viviani(set, viviani_tol)) {
        throw Error(ErrorCode::NotViviani, "defect " + std::to_string(viviani_defect(set)));
    }
    bool all_nonneg = true;
    bool all_nonpos = true;
    for (const auto& p : set) {
        const double d = signed_distance(point, p);
        all_nonneg = all_nonneg && d >= -kOneSidedSlack;
        all_nonpos = all_nonpos && d <= kOneSidedSlack;
    }
    if (!all_nonneg && !all_nonpos) {
        throw Error(ErrorCode::MixedSigns, "point lies on both sides of the hyperplane set");
    }
    std::vector<VectorN> feet;
    feet.reserve(set.size());
    for (const auto& p : set) feet.push_back(project_onto(point, p));
    return PointSet(std::move(feet));
}

// Regular k-gon in the plane: center, circumradius, and vertices
// counterclockwise starting at angle `rotation`.
struct RegularPolygon {
    VectorN center;
    double circumradius;
    std::vector<VectorN> vertices;

    double apothem() const {
        return circumradius * std::cos(std::numbers::pi / static_cast<double>(vertices.size()));
    }
    ConvexPolygon polygon() const { return ConvexPolygon(vertices); }
};

inline RegularPolygon make_regular_polygon(std::size_t k, const VectorN& center, double circumradius,
                                           double rotation = 0.0) {
    if (k < 3) throw Error(ErrorCode::InvalidPolygon, "a regular polygon needs at least 3 vertices");
    if (center.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "center must be 2-D");
    if (!(circumradius > 0.0)) throw Error(ErrorCode::NonPositiveLength, "circumradius must be positive");
    RegularPolygon g{center, circumradius, {}};
    g.vertices.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double a = rotation + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        g.vertices.push_back(center + VectorN{circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    return g;
}

// Checks that the center A of a regular polygon is the Fermat point of
// points B_i taken on the spokes A A_i. Throws SpokeViolation if some B_i is
// off its segment by more than 1e-9 (relative to the circumradius).
inline bool spoke_points_median_check(const RegularPolygon& g, std::span<const VectorN> spoke_points) {
    if (spoke_points.size() != g.vertices.size()) {
        throw Error(ErrorCode::SpokeViolation, "expected one point per spoke");
    }
    const double r = g.circumradius;
    for (std::size_t i = 0; i < spoke_points.size(); ++i) {
        const VectorN spoke = g.vertices[i] - g.center;
        const VectorN rel = spoke_points[i] - g.center;
        const double s = rel.dot(spoke) / spoke.squared_norm();
        const double off = (rel - s * spoke).norm();
        if (off > 1e-9 * r || s < -1e-9 || s > 1.0 + 1e-9) {
            throw Error(ErrorCode::SpokeViolation, "point " + std::to_string(i) + " is not on its spoke");
        }
    }
    const MedianResult m = geometric_median(PointSet({spoke_points.begin(), spoke_points.end()}));
    return m.point.distance(g.center) <= 1e-6 * r;
}

}  // namespace viviani
