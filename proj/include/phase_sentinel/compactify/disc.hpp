#pragma once

#include <cmath>
#include <utility>

#include "phase_sentinel/compactify/chart.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

struct DiscPoint {
    double xi = 0.0, eta = 0.0;
};

/// Radially monotone projection of the plane into the open unit disc.
inline DiscPoint disc_project(Point p) {
    double r = std::hypot(p.x, p.y);
    double s = 1.0 / (1.0 + r);
    return {p.x * s, p.y * s};
}

/// Boundary pair of an equilibrium at infinity: the direction it represents
/// and its antipode.
inline std::pair<DiscPoint, DiscPoint> disc_boundary_pair(Chart chart, double position) {
    double theta = (chart == Chart::U) ? std::atan2(position, 1.0) : std::atan2(1.0, position);
    DiscPoint plus{std::cos(theta), std::sin(theta)};
    DiscPoint minus{-plus.xi, -plus.eta};
    return {plus, minus};
}

}  // namespace phase_sentinel
