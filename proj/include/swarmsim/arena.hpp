#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swarmsim/vec2.hpp"

namespace swarmsim {

enum class BoundaryMode { bounded, unbounded };

inline const char* to_string(BoundaryMode m) {
    return m == BoundaryMode::bounded ? "bounded" : "unbounded";
}

struct ArenaConfig {
    double side = 500.0;
    BoundaryMode boundary_mode = BoundaryMode::bounded;

    void validate() const {
        if (!(side > 0.0)) throw std::invalid_argument("arena side must be > 0");
    }
};

// Normalizes an angle to [0, 2*pi).
inline double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    return theta;
}

// Wraps a coordinate to [0, side).
inline double wrap_coordinate(double v, double side) {
    v = std::fmod(v, side);
    if (v < 0.0) v += side;
    return v;
}

// Displacement from a to b under the arena metric: minimum-image per axis in
// unbounded mode, plain difference in bounded mode.
inline Vec2 displacement(const Vec2& from, const Vec2& to, const ArenaConfig& arena) {
    Vec2 d = to - from;
    if (arena.boundary_mode == BoundaryMode::unbounded) {
        d.x -= arena.side * std::round(d.x / arena.side);
        d.y -= arena.side * std::round(d.y / arena.side);
    }
    return d;
}

inline double distance(const Vec2& a, const Vec2& b, const ArenaConfig& arena) {
    return displacement(a, b, arena).norm();
}

inline double distance_sq(const Vec2& a, const Vec2& b, const ArenaConfig& arena) {
    return displacement(a, b, arena).norm_sq();
}

struct BoundaryResult {
    Vec2 position;
    double heading;
};

// Boundary handling after one step of motion. The position may exceed the
// arena by at most one step length (caller guarantees speed < side).
// Unbounded: coordinates wrap modulo side. Bounded: specular reflection on
// each violated axis (position mirrored about the boundary, the matching
// heading component negated).
inline BoundaryResult apply_boundary(Vec2 pos, double heading, const ArenaConfig& arena) {
    if (arena.boundary_mode == BoundaryMode::unbounded) {
        pos.x = wrap_coordinate(pos.x, arena.side);
        pos.y = wrap_coordinate(pos.y, arena.side);
        return {pos, wrap_angle(heading)};
    }
    double cx = std::cos(heading);
    double sy = std::sin(heading);
    if (pos.x < 0.0) {
        pos.x = -pos.x;
        cx = -cx;
    } else if (pos.x > arena.side) {
        pos.x = 2.0 * arena.side - pos.x;
        cx = -cx;
    }
    if (pos.y < 0.0) {
        pos.y = -pos.y;
        sy = -sy;
    } else if (pos.y > arena.side) {
        pos.y = 2.0 * arena.side - pos.y;
        sy = -sy;
    }
    return {pos, wrap_angle(std::atan2(sy, cx))};
}

}  // namespace swarmsim
