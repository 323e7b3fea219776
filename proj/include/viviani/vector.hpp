#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "viviani/errors.hpp"

namespace viviani {

// A point or direction in Euclidean n-space. Dimension is fixed at
// construction (n >= 1) and every coordinate is finite.
class VectorN {
public:
    VectorN(std::initializer_list<double> coords) : coords_(coords) { validate(); }
    explicit VectorN(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
    explicit VectorN(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
        validate();
    }

    static VectorN zero(std::size_t dim) { return VectorN(std::vector<double>(dim, 0.0)); }

    static VectorN unit(std::size_t dim, std::size_t axis) {
        std::vector<double> c(dim, 0.0);
        c.at(axis) = 1.0;
        return VectorN(std::move(c));
    }

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    double dot(const VectorN& other) const {
        require_same_dim(other);
        double s = 0.0;
        for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
        return s;
    }

    double squared_norm() const noexcept {
        double s = 0.0;
        for (double c : coords_) s += c * c;
        return s;
    }

    // Scaled to avoid overflow for large coordinates.
    double norm() const noexcept {
        double scale = 0.0;
        for (double c : coords_) scale = std::max(scale, std::abs(c));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (double c : coords_) {
            const double r = c / scale;
            s += r * r;
        }
        return scale * std::sqrt(s);
    }

    double distance(const VectorN& other) const { return (*this - other).norm(); }

    VectorN normalized() const {
        const double n = norm();
        if (n == 0.0) throw Error(ErrorCode::ZeroNormal, "cannot normalize the zero vector");
        return *this / n;
    }

    VectorN& operator+=(const VectorN& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        check_finite();
        return *this;
    }
    VectorN& operator-=(const VectorN& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        check_finite();
        return *this;
    }
    VectorN& operator*=(double s) {
        for (double& c : coords_) c *= s;
        check_finite();
        return *this;
    }
    VectorN& operator/=(double s) {
        for (double& c : coords_) c /= s;
        check_finite();
        return *this;
    }

    friend VectorN operator+(VectorN a, const VectorN& b) { return a += b; }
    friend VectorN operator-(VectorN a, const VectorN& b) { return a -= b; }
    friend VectorN operator*(VectorN a, double s) { return a *= s; }
    friend VectorN operator*(double s, VectorN a) { return a *= s; }
    friend VectorN operator/(VectorN a, double s) { return a /= s; }
    friend VectorN operator-(VectorN a) { return a *= -1.0; }

    friend bool operator==(const VectorN&, const VectorN&) = default;

    void require_same_dim(const VectorN& other) const {
        if (other.dim() != dim()) {
            throw Error(ErrorCode::DimensionMismatch, "dimensions " + std::to_string(dim()) +
                                                          " and " + std::to_string(other.dim()));
        }
    }

private:
    void validate() const {
        if (coords_.empty()) throw Error(ErrorCode::ZeroDimension, "vector must have dimension >= 1");
        check_finite();
    }

    void check_finite() const {
        for (double c : coords_) {
            if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "non-finite coordinate");
        }
    }

    std::vector<double> coords_;
};

inline double max_abs_diff(const VectorN& a, const VectorN& b) {
    a.require_same_dim(b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace viviani
