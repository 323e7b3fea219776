#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "viviani/errors.hpp"
#include "viviani/vector.hpp"

namespace viviani {

// Ordered list of k >= 1 points of a common dimension.
class PointSet {
public:
    explicit PointSet(std::vector<VectorN> points) : points_(std::move(points)) {
        if (points_.empty()) throw Error(ErrorCode::EmptyPointSet, "point set must be nonempty");
        for (const auto& p : points_) {
            if (p.dim() != points_.front().dim()) {
                throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
            }
        }
        for (std::size_t i = 0; i < points_.size(); ++i) {
            for (std::size_t j = i + 1; j < points_.size(); ++j) {
                diameter_ = std::max(diameter_, points_[i].distance(points_[j]));
            }
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return points_.front().dim(); }
    const VectorN& operator[](std::size_t i) const { return points_[i]; }
    std::span<const VectorN> points() const noexcept { return points_; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }
    double diameter() const noexcept { return diameter_; }

    VectorN centroid() const {
        VectorN c = VectorN::zero(dim());
        for (const auto& p : points_) c += p;
        return c / static_cast<double>(points_.size());
    }

    // Points closer than this to X are treated as coinciding with X.
    double coincidence_radius() const noexcept { return 1e-12 * diameter_; }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

private:
    std::vector<VectorN> points_;
    double diameter_ = 0.0;
};

enum class MedianStatus { InteriorOptimum, AnchorOptimum, NonUniqueCollinear };

constexpr std::string_view to_string(MedianStatus s) noexcept {
    switch (s) {
    case MedianStatus::InteriorOptimum: return "InteriorOptimum";
    case MedianStatus::AnchorOptimum: return "AnchorOptimum";
    case MedianStatus::NonUniqueCollinear: return "NonUniqueCollinear";
    }
    return "Unknown";
}

struct MedianResult {
    VectorN point;
    double objective = 0.0;
    MedianStatus status = MedianStatus::InteriorOptimum;
    // Set for AnchorOptimum only.
    std::optional<std::size_t> anchor_index;
    std::size_t iterations = 0;
    // Distance from zero to the subdifferential of the objective at `point`:
    // the norm of the unit-direction sum away from anchors, and
    // max(0, |sum over other points| - multiplicity) at an anchor.
    double residual = 0.0;
    bool converged = true;
};

struct MedianOptions {
    double tol = 1e-10;
    std::size_t max_iter = 10000;
};

// Interior certificates must satisfy residual <= k * this.
inline constexpr double kMedianCertificate = 1e-8;

inline double total_distance(const VectorN& x, const PointSet& pts) {
    if (x.dim() != pts.dim()) throw Error(ErrorCode::DimensionMismatch, "point and point set dimensions differ");
    double s = 0.0;
    for (const auto& p : pts) s += x.distance(p);
    return s;
}

// Sum of unit vectors from X towards every point.
inline VectorN direction_sum_at(const VectorN& x, const PointSet& pts) {
    if (x.dim() != pts.dim()) throw Error(ErrorCode::DimensionMismatch, "point and point set dimensions differ");
    VectorN sum = VectorN::zero(pts.dim());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const VectorN d = pts[i] - x;
        const double len = d.norm();
        if (len <= pts.coincidence_radius()) {
            throw Error(ErrorCode::CoincidesWithAnchor, "point coincides with input point " + std::to_string(i));
        }
        sum += d / len;
    }
    return sum;
}

namespace detail {

struct AnchorCertificate {
    double pull = 0.0;          // norm of the unit-direction sum over the other points
    double multiplicity = 0.0;  // input points sitting on X
};

inline AnchorCertificate anchor_certificate(const VectorN& x, const PointSet& pts) {
    AnchorCertificate cert;
    VectorN sum = VectorN::zero(pts.dim());
    for (const auto& p : pts) {
        const VectorN d = p - x;
        const double len = d.norm();
        if (len <= pts.coincidence_radius()) {
            cert.multiplicity += 1.0;
        } else {
            sum += d / len;
        }
    }
    cert.pull = sum.norm();
    return cert;
}

inline VectorN pull_direction(const VectorN& x, const PointSet& pts) {
    VectorN sum = VectorN::zero(pts.dim());
    for (const auto& p : pts) {
        const VectorN d = p - x;
        const double len = d.norm();
        if (len > pts.coincidence_radius()) sum += d / len;
    }
    return sum;
}

// sigma_2 / sigma_1 of the centered point matrix; 0 when n == 1 or k == 1.
inline double collinearity_ratio(const PointSet& pts, VectorN* axis) {
    const Eigen::Index k = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index n = static_cast<Eigen::Index>(pts.dim());
    const VectorN c = pts.centroid();
    Eigen::MatrixXd m(k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = pts[i][j] - c[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (axis != nullptr) {
        std::vector<double> a(n);
        for (Eigen::Index j = 0; j < n; ++j) a[j] = svd.matrixV()(j, 0);
        *axis = VectorN(std::move(a));
    }
    if (sv.size() < 2 || sv(0) == 0.0) return 0.0;
    return sv(1) / sv(0);
}

}  // namespace detail

// Distance from zero to the subdifferential of the total distance at X.
inline double median_residual(const VectorN& x, const PointSet& pts) {
    const auto cert = detail::anchor_certificate(x, pts);
    return std::max(0.0, cert.pull - cert.multiplicity);
}

// Weiszfeld iteration for the point minimizing the total distance to `pts`.
//
// Before iterating, every input point is tested against the anchor
// optimality condition |sum_{j != i} unit(P_j - P_i)| <= multiplicity; a
// point that passes is the minimizer. Collinear inputs (sigma_2/sigma_1 of the
// centered points below 1e-12) return the midpoint of the middle order
// statistics along the line.
//
// `observer(iteration, x, objective)` sees the starting point and every iterate.
template <class Observer>
MedianResult geometric_median(const PointSet& pts, const MedianOptions& opts, Observer&& observer) {
    const std::size_t k = pts.size();
    if (k == 1 || pts.diameter() == 0.0) {
        return {pts[0], 0.0, MedianStatus::AnchorOptimum, 0, 0, 0.0, true};
    }

    VectorN axis = VectorN::zero(pts.dim());
    if (detail::collinearity_ratio(pts, &axis) < 1e-12) {
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> along(k);
        for (std::size_t i = 0; i < k; ++i) along[i] = axis.dot(pts[i]);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return along[a] < along[b]; });
        const VectorN& lo = pts[order[(k - 1) / 2]];
        const VectorN& hi = pts[order[k / 2]];
        VectorN mid = (lo + hi) / 2.0;
        const double objective = total_distance(mid, pts);
        const double residual = median_residual(mid, pts);
        return {std::move(mid), objective, MedianStatus::NonUniqueCollinear, std::nullopt, 0, residual, true};
    }

    for (std::size_t i = 0; i < k; ++i) {
        const auto cert = detail::anchor_certificate(pts[i], pts);
        if (cert.pull <= cert.multiplicity + 1e-9) {
            return {pts[i], total_distance(pts[i], pts), MedianStatus::AnchorOptimum, i, 0,
                    std::max(0.0, cert.pull - cert.multiplicity), true};
        }
    }

    const double eta = pts.coincidence_radius();
    VectorN x = pts.centroid();
    double fx = total_distance(x, pts);
    observer(std::size_t{0}, x, fx);
    VectorN best = x;
    double best_f = fx;
    bool converged = false;
    std::size_t iter = 0;
    std::vector<double> inv(k);
    while (iter < opts.max_iter) {
        ++iter;
        std::size_t nearest = 0;
        double nearest_d = x.distance(pts[0]);
        for (std::size_t i = 0; i < k; ++i) {
            const double d = x.distance(pts[i]);
            if (d < nearest_d) {
                nearest_d = d;
                nearest = i;
            }
            inv[i] = d > 0.0 ? 1.0 / d : 0.0;
        }
        if (nearest_d <= eta) {
            // Landed on a non-optimal anchor: step off it along the descent direction.
            const VectorN pull = detail::pull_direction(pts[nearest], pts);
            x = pts[nearest] + (eta * 1e3 / pull.norm()) * pull;
            fx = total_distance(x, pts);
            observer(iter, x, fx);
            continue;
        }
        const double weight = std::accumulate(inv.begin(), inv.end(), 0.0);
        // Weiszfeld update written as a displacement: the unit-direction sum
        // divided by the sum of inverse distances.
        VectorN pull = VectorN::zero(pts.dim());
        for (std::size_t i = 0; i < k; ++i) pull += inv[i] * (pts[i] - x);
        const double residual_before = pull.norm();
        VectorN next = x + pull / weight;
        const double step = residual_before / weight;
        const bool stalled = next == x;
        x = std::move(next);
        fx = total_distance(x, pts);
        observer(iter, x, fx);
        if (fx <= best_f) {
            best = x;
            best_f = fx;
        }
        if (stalled ||
            (step <= opts.tol * (1.0 + x.norm()) && residual_before <= static_cast<double>(k) * kMedianCertificate)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        x = best;
        fx = best_f;
    }
    const double residual = median_residual(x, pts);
    return {std::move(x), fx, MedianStatus::InteriorOptimum, std::nullopt, iter, residual, converged};
}

inline MedianResult geometric_median(const PointSet& pts, const MedianOptions& opts = {}) {
    return geometric_median(pts, opts, [](std::size_t, const VectorN&, double) {});
}

}  // namespace viviani
