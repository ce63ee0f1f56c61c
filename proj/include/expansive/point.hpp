#pragma once

#include <cmath>
#include <cstdint>

namespace expansive {

/// A point of a metric space. Enumerable spaces identify points by an
/// integer key (the space defines what the key means); interval spaces
/// carry free points identified by their coordinate alone.
class Point {
public:
    Point() = default;

    static Point indexed(std::int64_t key, double coord) {
        Point p;
        p.key_ = key;
        p.coord_ = coord;
        return p;
    }

    static Point free_point(double coord) {
        Point p;
        p.coord_ = coord;
        return p;
    }

    std::int64_t key() const { return key_; }
    double coord() const { return coord_; }
    bool is_free() const { return key_ < 0; }
    bool has_coord() const { return !std::isnan(coord_); }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.key_ >= 0 && b.key_ >= 0) return a.key_ == b.key_;
        if (a.key_ < 0 && b.key_ < 0) return a.coord_ == b.coord_;
        return false;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    std::int64_t key_ = -1;
    double coord_ = std::nan("");
};

}  // namespace expansive
