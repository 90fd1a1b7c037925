#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "harmap/series.hpp"

namespace harmap {

/// Radii accumulating geometrically toward r_max: 1 - r_k shrinks by a fixed
/// ratio from 0.9 (r = 0.1) down to 1 - r_max. The certified inequalities
/// degenerate at |z| -> 1, so samples belong near the boundary.
inline std::vector<double> clustered_radii(int count, double r_max) {
    if (count < 1) throw std::invalid_argument("radius count must be >= 1");
    if (!(r_max > 0.1 && r_max < 1.0))
        throw std::invalid_argument("max radius must lie in (0.1, 1)");
    if (count == 1) return {r_max};
    std::vector<double> r(static_cast<std::size_t>(count));
    const double ratio = std::pow((1.0 - r_max) / 0.9, 1.0 / (count - 1));
    double gap = 0.9;
    for (int k = 0; k < count; ++k) {
        r[static_cast<std::size_t>(k)] = 1.0 - gap;
        gap *= ratio;
    }
    r.back() = r_max;
    return r;
}

/// Sampling plan for the disk functionals and the certificate search.
struct GridSpec {
    int radial_count = 48;     // K radii, clustered toward max_radius
    double max_radius = 0.99;  // r_K
    int angle_count = 256;     // M equispaced angles over [0, 2pi)
    int mu_count = 180;        // certificate mu steps over [0, 2pi)
    int nu_count = 90;         // certificate nu samples over [0, pi], ends included
};

inline GridSpec default_grid() { return {}; }

inline void validate(const GridSpec& g) {
    if (g.radial_count < 8) throw std::invalid_argument("grid needs at least 8 radii");
    if (g.angle_count < 64) throw std::invalid_argument("grid needs at least 64 angles");
    if (!(g.max_radius > 0.1 && g.max_radius <= kDefaultEvalRadius))
        throw std::invalid_argument("grid max radius must lie in (0.1, 0.995]");
    if (g.mu_count < 4 || g.nu_count < 2)
        throw std::invalid_argument("certificate grid too coarse");
}

inline std::vector<double> grid_radii(const GridSpec& g) {
    return clustered_radii(g.radial_count, g.max_radius);
}

/// All sample points, radius-major then angle; z = 0 is never included.
inline std::vector<cplx> disk_points(const GridSpec& g) {
    validate(g);
    const std::vector<double> radii = grid_radii(g);
    std::vector<cplx> pts;
    pts.reserve(radii.size() * static_cast<std::size_t>(g.angle_count));
    for (double r : radii) {
        for (int j = 0; j < g.angle_count; ++j) {
            const double th = 2.0 * std::numbers::pi * j / g.angle_count;
            pts.push_back(std::polar(r, th));
        }
    }
    return pts;
}

}  // namespace harmap
