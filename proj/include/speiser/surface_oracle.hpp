#pragma once

#include <cstdint>
#include <vector>

#include "speiser/surface.hpp"

namespace speiser::surface {

/// Independent verification oracle: shortest paths from the basepoint on a
/// uniform grid graph with the 8-neighbor stencil and edge weights
/// density(midpoint) * Euclidean step. First-order convergent to the
/// continuum distance with a stencil-anisotropy constant.
class MeshOracle {
public:
    /// Grid over [x_min,x_max] x [y_min,y_max], snapped so the basepoint
    /// (0, 1) lies exactly on a node. Throws when the node budget would be
    /// exceeded (suggests a larger h).
    MeshOracle(double x_min, double x_max, double y_min, double y_max, double h,
               std::size_t max_nodes = 60'000'000);

    /// Grid over the bounding box for radius r.
    static MeshOracle for_radius(double r, double h, std::size_t max_nodes = 60'000'000);

    double h() const { return h_; }
    bool in_box(double x, double y) const;
    /// Distance at the node nearest to (x, y).
    double at(double x, double y) const;

private:
    double h_, x0_, y0_;
    std::int64_t nx_ = 0, ny_ = 0;
    std::vector<double> dist_;
    void run_dijkstra(std::int64_t src);
};

struct IndicatorAreas {
    double upper_lo = 0, upper_hi = 0;
    double lower_lo = 0, lower_hi = 0;
    double achieved_rel_tol = 0;
    std::size_t cells = 0;

    double upper_mid() const { return 0.5 * (upper_lo + upper_hi); }
    double lower_mid() const { return 0.5 * (lower_lo + lower_hi); }
};

/// Ball areas by adaptive cell subdivision on the indicator of
/// distance <= r, with inner/outer covers: cells are classified by the
/// Lipschitz bound density_max * half-diagonal and refined until decided or
/// smaller than h_min. The [lo, hi] interval brackets the true area.
/// Feasible at small radii; used to cross-validate the slice quadrature.
IndicatorAreas indicator_ball_areas(const Distancer& d, double r, double h_min);

}  // namespace speiser::surface
