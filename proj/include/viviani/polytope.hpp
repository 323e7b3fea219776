#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "viviani/errors.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/vector.hpp"

namespace viviani {

namespace detail {

inline double cross2(const VectorN& a, const VectorN& b) { return a[0] * b[1] - a[1] * b[0]; }

inline double diameter(std::span<const VectorN> pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, pts[i].distance(pts[j]));
    }
    return d;
}

inline VectorN cross3(const VectorN& a, const VectorN& b) {
    return VectorN{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace detail

// Strictly convex planar polygon with counterclockwise vertices. Clockwise
// input is reversed on construction (the first vertex is kept first).
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<VectorN> vertices) : vertices_(std::move(vertices)) {
        const std::size_t k = vertices_.size();
        if (k < 3) throw Error(ErrorCode::InvalidPolygon, "a polygon needs at least 3 vertices");
        for (const auto& v : vertices_) {
            if (v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "polygon vertices must be 2-D");
        }
        diameter_ = detail::diameter(vertices_);
        if (diameter_ == 0.0) throw Error(ErrorCode::InvalidPolygon, "all vertices coincide");
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (vertices_[i].distance(vertices_[j]) <= 1e-12 * diameter_) {
                    throw Error(ErrorCode::InvalidPolygon, "repeated vertex " + std::to_string(j));
                }
            }
        }
        if (signed_area() < 0.0) std::reverse(vertices_.begin() + 1, vertices_.end());

        // Every turn strictly left and total turning one full circle; the
        // second test rejects star polygons whose turns are all left.
        const double min_cross = 1e-12 * diameter_ * diameter_;
        double turning = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const VectorN e0 = edge(i);
            const VectorN e1 = edge((i + 1) % k);
            const double c = detail::cross2(e0, e1);
            if (!(c > min_cross)) {
                throw Error(ErrorCode::InvalidPolygon, "not strictly convex at vertex " +
                                                           std::to_string((i + 1) % k));
            }
            turning += std::atan2(c, e0.dot(e1));
        }
        if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
            throw Error(ErrorCode::InvalidPolygon, "polygon winds more than once");
        }
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const VectorN& operator[](std::size_t i) const { return vertices_[i]; }
    std::span<const VectorN> vertices() const noexcept { return vertices_; }
    double diameter() const noexcept { return diameter_; }

    // Edge vector from vertex i to vertex i+1 (cyclic).
    VectorN edge(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()] - vertices_[i]; }

    double signed_area() const {
        double a = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            a += detail::cross2(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        }
        return 0.5 * a;
    }

    VectorN vertex_centroid() const {
        VectorN c = VectorN::zero(2);
        for (const auto& v : vertices_) c += v;
        return c / static_cast<double>(vertices_.size());
    }

private:
    std::vector<VectorN> vertices_;
    double diameter_ = 0.0;
};

// One hyperplane per edge, through both endpoints, normal pointing out of the polygon.
inline HyperplaneSet polygon_to_hyperplanes(const ConvexPolygon& polygon) {
    std::vector<OrientedHyperplane> planes;
    planes.reserve(polygon.size());
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const VectorN e = polygon.edge(i);
        // Interior lies to the left of a counterclockwise edge.
        planes.push_back(make_hyperplane_from_anchor(VectorN{e[1], -e[0]}, polygon[i]));
    }
    return HyperplaneSet(std::move(planes));
}

inline bool is_viviani_polygon(const ConvexPolygon& polygon, double tol = kDefaultVivianiTolerance) {
    return is_viviani(polygon_to_hyperplanes(polygon), tol);
}

// Polygon whose edge i has length side_lengths[i] and direction at angle
// 2*pi*i/k, starting at the origin along +x.
inline ConvexPolygon make_equiangular_polygon(std::span<const double> side_lengths) {
    const std::size_t k = side_lengths.size();
    if (k < 3) throw Error(ErrorCode::InvalidPolygon, "an equiangular polygon needs at least 3 sides");
    double total = 0.0;
    for (double s : side_lengths) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw Error(ErrorCode::NonPositiveLength, "side lengths must be positive and finite");
        }
        total += s;
    }
    std::vector<VectorN> dirs;
    dirs.reserve(k);
    double gap_x = 0.0;
    double gap_y = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        dirs.push_back(VectorN{std::cos(angle), std::sin(angle)});
        gap_x += side_lengths[i] * dirs.back()[0];
        gap_y += side_lengths[i] * dirs.back()[1];
    }
    const double gap = std::hypot(gap_x, gap_y);
    if (gap > 1e-9 * total) {
        throw Error(ErrorCode::ClosureViolation, "side lengths leave a closing gap of " + std::to_string(gap));
    }
    std::vector<VectorN> vertices;
    vertices.reserve(k);
    vertices.push_back(VectorN::zero(2));
    for (std::size_t i = 0; i + 1 < k; ++i) vertices.push_back(vertices.back() + side_lengths[i] * dirs[i]);
    return ConvexPolygon(std::move(vertices));
}

enum class PlatonicSolid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

inline constexpr std::array<std::string_view, 5> kPlatonicNames = {
    "tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"};

inline PlatonicSolid parse_platonic_solid(std::string_view name) {
    for (std::size_t i = 0; i < kPlatonicNames.size(); ++i) {
        if (kPlatonicNames[i] == name) return static_cast<PlatonicSolid>(i);
    }
    throw Error(ErrorCode::UnknownSolid, std::string(name));
}

inline std::string_view to_string(PlatonicSolid s) { return kPlatonicNames[static_cast<std::size_t>(s)]; }

inline std::size_t face_count(PlatonicSolid s) {
    constexpr std::array<std::size_t, 5> counts = {4, 6, 8, 12, 20};
    return counts[static_cast<std::size_t>(s)];
}

// Vertices of the solid with unit circumradius, centered at the origin.
// Cube and octahedron are axis-aligned; the rest use the usual
// (+-1, +-1, +-1) and golden-ratio coordinates.
inline std::vector<VectorN> platonic_vertices(PlatonicSolid solid) {
    constexpr double phi = std::numbers::phi;
    std::vector<std::array<double, 3>> raw;
    const auto signs = [](double a, double b, double c, auto&& emit) {
        for (double sa : {1.0, -1.0}) {
            if (a == 0.0 && sa < 0) continue;
            for (double sb : {1.0, -1.0}) {
                if (b == 0.0 && sb < 0) continue;
                for (double sc : {1.0, -1.0}) {
                    if (c == 0.0 && sc < 0) continue;
                    emit(std::array<double, 3>{sa * a, sb * b, sc * c});
                }
            }
        }
    };
    const auto push = [&raw](std::array<double, 3> v) { raw.push_back(v); };
    const auto cyclic = [&](double a, double b, double c) {
        signs(a, b, c, push);
        signs(b, c, a, push);
        signs(c, a, b, push);
    };
    switch (solid) {
    case PlatonicSolid::Tetrahedron:
        raw = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
        break;
    case PlatonicSolid::Cube:
        signs(1, 1, 1, push);
        break;
    case PlatonicSolid::Octahedron:
        cyclic(1, 0, 0);
        break;
    case PlatonicSolid::Dodecahedron:
        signs(1, 1, 1, push);
        cyclic(0, 1 / phi, phi);
        break;
    case PlatonicSolid::Icosahedron:
        cyclic(0, 1, phi);
        break;
    }
    std::vector<VectorN> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(VectorN{r[0], r[1], r[2]}.normalized());
    return out;
}

// Supporting planes of a finite 3-D point cloud that contain at least three
// of its points, with outward normals. Brute force over point triples.
inline HyperplaneSet supporting_face_planes(std::span<const VectorN> pts) {
    const double scale = detail::diameter(pts);
    const double eps = 1e-9 * scale;
    std::vector<OrientedHyperplane> faces;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            for (std::size_t l = j + 1; l < pts.size(); ++l) {
                const VectorN c = detail::cross3(pts[j] - pts[i], pts[l] - pts[i]);
                if (c.norm() <= eps * scale) continue;
                VectorN n = c.normalized();
                double offset = n.dot(pts[i]);
                bool any_above = false;
                bool any_below = false;
                for (const auto& p : pts) {
                    const double s = n.dot(p) - offset;
                    any_above = any_above || s > eps;
                    any_below = any_below || s < -eps;
                }
                if (any_above && any_below) continue;
                if (any_above) {
                    n = -n;
                    offset = -offset;
                }
                const bool seen = std::any_of(faces.begin(), faces.end(), [&](const OrientedHyperplane& f) {
                    return max_abs_diff(f.normal(), n) <= 1e-9;
                });
                if (!seen) faces.emplace_back(std::move(n), offset);
            }
        }
    }
    return HyperplaneSet(std::move(faces));
}

// Face planes of the unit-circumradius solid, outward normals.
inline HyperplaneSet platonic_solid_normals(PlatonicSolid solid) {
    return supporting_face_planes(platonic_vertices(solid));
}

inline HyperplaneSet platonic_solid_normals(std::string_view name) {
    return platonic_solid_normals(parse_platonic_solid(name));
}

// The one-parameter family of irregular Viviani tetrahedra, 0 < t < pi.
// Every plane has offset 1, so each is tangent to the unit sphere and v is 4
// everywhere.
inline HyperplaneSet example5_tetrahedron(double t) {
    if (!(t > 0.0 && t < std::numbers::pi)) {
        throw Error(ErrorCode::DomainError, "t must lie in the open interval (0, pi)");
    }
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t) / 2.0;
    const double h = (1.0 - std::cos(t)) / 2.0;
    std::vector<OrientedHyperplane> planes;
    planes.emplace_back(VectorN{c, s, h}, 1.0);
    planes.emplace_back(VectorN{-c, s, h}, 1.0);
    planes.emplace_back(VectorN{0.0, -std::sin(t), std::cos(t)}, 1.0);
    planes.emplace_back(VectorN{0.0, 0.0, -1.0}, 1.0);
    return HyperplaneSet(std::move(planes));
}

enum class TriangleClass { Equilateral, NotEquilateral };
enum class QuadrilateralClass { Parallelogram, NotParallelogram };

// Equilateral iff all side lengths agree within rel_tol * diameter.
inline TriangleClass classify_triangle(const ConvexPolygon& tri, double rel_tol = 1e-9) {
    if (tri.size() != 3) throw Error(ErrorCode::InvalidPolygon, "expected a triangle");
    const double a = tri.edge(0).norm();
    const double b = tri.edge(1).norm();
    const double c = tri.edge(2).norm();
    const double spread = std::max({a, b, c}) - std::min({a, b, c});
    return spread <= rel_tol * tri.diameter() ? TriangleClass::Equilateral : TriangleClass::NotEquilateral;
}

// Parallelogram iff both pairs of opposite edge vectors cancel within rel_tol * diameter.
inline QuadrilateralClass classify_quadrilateral(const ConvexPolygon& quad, double rel_tol = 1e-9) {
    if (quad.size() != 4) throw Error(ErrorCode::InvalidPolygon, "expected a quadrilateral");
    const double limit = rel_tol * quad.diameter();
    const bool first = (quad.edge(0) + quad.edge(2)).norm() <= limit;
    const bool second = (quad.edge(1) + quad.edge(3)).norm() <= limit;
    return first && second ? QuadrilateralClass::Parallelogram : QuadrilateralClass::NotParallelogram;
}

inline double unsigned_distance_sum(const VectorN& point, const HyperplaneSet& set) {
    if (point.dim() != set.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "point and hyperplane set dimensions differ");
    }
    double s = 0.0;
    for (const auto& p : set) s += std::abs(signed_distance(point, p));
    return s;
}

// Bounded convex polytope with nonempty interior, given as the intersection
// of the half-spaces {x : n_i . x <= c_i} of an outward-oriented set.
//
// Boundedness means the normals positively span the space. That is checked
// exactly for the rank and for the origin lying in the convex hull of the
// normals, then probabilistically for the boundary case: a seeded
// multi-start subgradient search for a unit u with max_i n_i . u <= 0. The
// interior is certified by a positive Chebyshev radius.
class ConvexPolytopeH {
public:
    explicit ConvexPolytopeH(HyperplaneSet halfspaces) : halfspaces_(std::move(halfspaces)) {
        for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
            for (std::size_t j = i + 1; j < halfspaces_.size(); ++j) {
                const auto& a = halfspaces_[i];
                const auto& b = halfspaces_[j];
                if (max_abs_diff(a.normal(), b.normal()) <= 1e-12 &&
                    std::abs(a.offset() - b.offset()) <= 1e-12 * (1.0 + std::abs(a.offset()))) {
                    throw Error(ErrorCode::InvalidPolytope, "duplicate hyperplane " + std::to_string(j));
                }
            }
        }
        if (!normals_positively_span(halfspaces_)) {
            throw Error(ErrorCode::InvalidPolytope, "half-space intersection is unbounded");
        }
        auto [center, radius] = chebyshev_probe(halfspaces_);
        double scale = 1.0;
        for (const auto& p : halfspaces_) scale = std::max(scale, std::abs(p.offset()));
        if (!(radius > 1e-9 * scale)) {
            throw Error(ErrorCode::InvalidPolytope, "half-space intersection has empty interior");
        }
        interior_point_ = std::move(center);
        inradius_lower_bound_ = radius;
    }

    const HyperplaneSet& halfspaces() const noexcept { return halfspaces_; }
    std::size_t dim() const noexcept { return halfspaces_.dim(); }
    // A point whose distance to every facet is inradius_lower_bound().
    const VectorN& interior_point() const noexcept { return interior_point_; }
    double inradius_lower_bound() const noexcept { return inradius_lower_bound_; }

    bool contains(const VectorN& x, double eps = 0.0) const {
        for (const auto& p : halfspaces_) {
            if (signed_distance(x, p) < -eps) return false;
        }
        return true;
    }

    // The normals positively span R^n iff they span it linearly and every
    // -n_j is a nonnegative combination of them (then a strictly positive
    // combination sums to zero).
    static bool normals_positively_span(const HyperplaneSet& set) {
        const auto n = static_cast<Eigen::Index>(set.dim());
        const auto k = static_cast<Eigen::Index>(set.size());
        Eigen::MatrixXd a(n, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) a(i, j) = set[static_cast<std::size_t>(j)].normal()[static_cast<std::size_t>(i)];
        }
        if (Eigen::FullPivLU<Eigen::MatrixXd>(a).setThreshold(1e-9).rank() < n) return false;
        for (Eigen::Index j = 0; j < k; ++j) {
            const Eigen::VectorXd b = -a.col(j);
            if ((a * nnls(a, b) - b).norm() > 1e-9) return false;
        }
        return true;
    }

private:
    // Lawson-Hanson nonnegative least squares: argmin |a x - b| over x >= 0.
    static Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
        const Eigen::Index k = a.cols();
        Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
        std::vector<bool> active(static_cast<std::size_t>(k), false);
        const double tol = 1e-12 * std::max(1.0, b.norm()) * static_cast<double>(k);
        const auto solve_passive = [&] {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (active[static_cast<std::size_t>(i)]) idx.push_back(i);
            }
            Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
            const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
            Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
            for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zs(static_cast<Eigen::Index>(c));
            return z;
        };
        for (Eigen::Index outer = 0; outer < 3 * k + 10; ++outer) {
            const Eigen::VectorXd w = a.transpose() * (b - a * x);
            Eigen::Index arg = -1;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (!active[static_cast<std::size_t>(i)] && w(i) > tol && (arg < 0 || w(i) > w(arg))) arg = i;
            }
            if (arg < 0) break;
            active[static_cast<std::size_t>(arg)] = true;
            for (Eigen::Index inner = 0; inner < 3 * k + 10; ++inner) {
                const Eigen::VectorXd z = solve_passive();
                double alpha = 1.0;
                bool feasible = true;
                for (Eigen::Index i = 0; i < k; ++i) {
                    if (active[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
                        feasible = false;
                        alpha = std::min(alpha, x(i) / (x(i) - z(i)));
                    }
                }
                if (feasible) {
                    x = z;
                    break;
                }
                x += alpha * (z - x);
                for (Eigen::Index i = 0; i < k; ++i) {
                    if (active[static_cast<std::size_t>(i)] && x(i) <= 1e-15) {
                        active[static_cast<std::size_t>(i)] = false;
                        x(i) = 0.0;
                    }
                }
            }
        }
        return x;
    }

    // Subgradient ascent on min_i (c_i - n_i . x); with unit normals this is
    // the radius of the largest ball around x inside the polytope.
    static std::pair<VectorN, double> chebyshev_probe(const HyperplaneSet& set) {
        const auto radius_at = [&set](const VectorN& x, std::size_t& arg) {
            double r = signed_distance(x, set[0]);
            arg = 0;
            for (std::size_t i = 1; i < set.size(); ++i) {
                const double d = signed_distance(x, set[i]);
                if (d < r) {
                    r = d;
                    arg = i;
                }
            }
            return r;
        };
        double scale = 1.0;
        for (const auto& p : set) scale = std::max(scale, std::abs(p.offset()));
        VectorN x = VectorN::zero(set.dim());
        VectorN best_x = x;
        std::size_t arg = 0;
        double best = radius_at(x, arg);
        for (int it = 0; it < 20000; ++it) {
            x -= (scale / std::sqrt(it + 1.0)) * set[arg].normal();
            const double r = radius_at(x, arg);
            if (r > best) {
                best = r;
                best_x = x;
            }
        }
        return {best_x, best};
    }

    HyperplaneSet halfspaces_;
    VectorN interior_point_ = VectorN::zero(1);
    double inradius_lower_bound_ = 0.0;
};

}  // namespace viviani
