#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "viviani/errors.hpp"
#include "viviani/vector.hpp"

namespace viviani {

// Normals must be unit length to within this before a hyperplane accepts them.
inline constexpr double kUnitNormalTolerance = 1e-9;
// Normals at or below this length cannot be normalized.
inline constexpr double kZeroNormalThreshold = 1e-12;
// Default absolute tolerance on the Viviani defect.
inline constexpr double kDefaultVivianiTolerance = 1e-9;

// The hyperplane {x : normal . x = offset}, oriented by its unit normal.
//
// Sign convention for distances: a point strictly on the side the normal
// points into has negative signed distance; a point on the opposite side has
// positive signed distance.
class OrientedHyperplane {
public:
    OrientedHyperplane(VectorN normal, double offset) : normal_(std::move(normal)), offset_(offset) {
        if (!std::isfinite(offset_)) throw Error(ErrorCode::NonFinite, "hyperplane offset");
        const double len = normal_.norm();
        if (std::abs(len - 1.0) > kUnitNormalTolerance) {
            throw Error(ErrorCode::NonUnitNormal,
                        "normal has length " + std::to_string(len) + ", expected 1");
        }
    }

    const VectorN& normal() const noexcept { return normal_; }
    double offset() const noexcept { return offset_; }
    std::size_t dim() const noexcept { return normal_.dim(); }

    OrientedHyperplane with_offset(double offset) const { return {normal_, offset}; }

    friend bool operator==(const OrientedHyperplane&, const OrientedHyperplane&) = default;

private:
    VectorN normal_;
    double offset_;
};

// Hyperplane through `anchor` with normal `normal_raw` rescaled to unit length.
inline OrientedHyperplane make_hyperplane_from_anchor(const VectorN& normal_raw, const VectorN& anchor) {
    normal_raw.require_same_dim(anchor);
    const double len = normal_raw.norm();
    if (len <= kZeroNormalThreshold) {
        throw Error(ErrorCode::ZeroNormal, "normal length " + std::to_string(len));
    }
    VectorN unit = normal_raw / len;
    const double offset = unit.dot(anchor);
    return {std::move(unit), offset};
}

// offset - normal . P, i.e. (P_anchor - P) . normal for any P_anchor on the plane.
inline double signed_distance(const VectorN& point, const OrientedHyperplane& plane) {
    return plane.offset() - plane.normal().dot(point);
}

// Ordered multiset of oriented hyperplanes of a common ambient dimension.
// Duplicates are allowed; the empty set is not.
class HyperplaneSet {
public:
    explicit HyperplaneSet(std::vector<OrientedHyperplane> planes) : planes_(std::move(planes)) {
        if (planes_.empty()) throw Error(ErrorCode::EmptySet, "hyperplane set must be nonempty");
        const std::size_t n = planes_.front().dim();
        for (const auto& p : planes_) {
            if (p.dim() != n) {
                throw Error(ErrorCode::DimensionMismatch, "hyperplanes of mixed dimension");
            }
        }
    }

    std::size_t size() const noexcept { return planes_.size(); }
    std::size_t dim() const noexcept { return planes_.front().dim(); }
    const OrientedHyperplane& operator[](std::size_t i) const { return planes_[i]; }
    std::span<const OrientedHyperplane> planes() const noexcept { return planes_; }
    auto begin() const noexcept { return planes_.begin(); }
    auto end() const noexcept { return planes_.end(); }

    // Same normals, new offsets.
    HyperplaneSet with_offsets(std::span<const double> offsets) const {
        if (offsets.size() != planes_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "offset count differs from plane count");
        }
        std::vector<OrientedHyperplane> out;
        out.reserve(planes_.size());
        for (std::size_t i = 0; i < planes_.size(); ++i) out.push_back(planes_[i].with_offset(offsets[i]));
        return HyperplaneSet(std::move(out));
    }

    // Convenience: one plane per (normal, offset) pair.
    static HyperplaneSet from_normals(std::span<const VectorN> normals, std::span<const double> offsets) {
        if (normals.size() != offsets.size()) {
            throw Error(ErrorCode::DimensionMismatch, "normal count differs from offset count");
        }
        std::vector<OrientedHyperplane> out;
        out.reserve(normals.size());
        for (std::size_t i = 0; i < normals.size(); ++i) out.emplace_back(normals[i], offsets[i]);
        return HyperplaneSet(std::move(out));
    }

    friend bool operator==(const HyperplaneSet&, const HyperplaneSet&) = default;

private:
    std::vector<OrientedHyperplane> planes_;
};

// v(P): the sum of signed distances from P to every plane of the set.
inline double viviani_value(const VectorN& point, const HyperplaneSet& set) {
    if (point.dim() != set.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "point and hyperplane set dimensions differ");
    }
    // sum(c_i) - (sum n_i) . P: same value, but no error growing with |P|
    // when the normals cancel exactly.
    double offsets = 0.0;
    VectorN normals = VectorN::zero(set.dim());
    for (const auto& p : set) {
        offsets += p.offset();
        normals += p.normal();
    }
    return offsets - normals.dot(point);
}

inline VectorN normal_sum(const HyperplaneSet& set) {
    VectorN sum = VectorN::zero(set.dim());
    for (const auto& p : set) sum += p.normal();
    return sum;
}

// Norm of the normal sum; equals the norm of the gradient of v.
inline double viviani_defect(const HyperplaneSet& set) { return normal_sum(set).norm(); }

// True when v is constant, i.e. the unit normals cancel. Offsets never matter.
inline bool is_viviani(const HyperplaneSet& set, double tol = kDefaultVivianiTolerance) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tolerance must be positive");
    return viviani_defect(set) <= tol;
}

// v is affine; this is its (constant) gradient, minus the normal sum.
inline VectorN viviani_gradient(const HyperplaneSet& set) { return -normal_sum(set); }

// Unit vector along the normal sum. v drops by the defect per unit step along
// it, and the level sets of v are the hyperplanes orthogonal to it. Empty for
// Viviani sets.
inline std::optional<VectorN> level_set_direction(const HyperplaneSet& set) {
    VectorN sum = normal_sum(set);
    const double defect = sum.norm();
    if (defect <= kDefaultVivianiTolerance) return std::nullopt;
    return sum / defect;
}

// Pushes a list of raw directions towards a set of unit vectors summing to
// zero: subtract the mean, renormalize, repeat until the defect is at most
// `target`. Returns nothing if some direction collapses or the iteration
// stalls.
inline std::optional<std::vector<VectorN>> rebalance_normals(std::vector<VectorN> dirs,
                                                             double target = 1e-12,
                                                             int max_rounds = 200) {
    if (dirs.empty()) return std::nullopt;
    const std::size_t n = dirs.front().dim();
    for (auto& d : dirs) {
        if (d.dim() != n) throw Error(ErrorCode::DimensionMismatch, "mixed dimensions");
        if (d.norm() <= kZeroNormalThreshold) return std::nullopt;
        d = d.normalized();
    }
    for (int round = 0; round < max_rounds; ++round) {
        VectorN sum = VectorN::zero(n);
        for (const auto& d : dirs) sum += d;
        if (sum.norm() <= target) return dirs;
        const VectorN mean = sum / static_cast<double>(dirs.size());
        for (auto& d : dirs) {
            VectorN shifted = d - mean;
            if (shifted.norm() <= 1e-6) return std::nullopt;
            d = shifted.normalized();
        }
    }
    return std::nullopt;
}

}  // namespace viviani
