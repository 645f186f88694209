#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace speiser::surface {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The surface under study: conformal density 1/y on the upper region
/// {y >= 1} (curvature -1) and exp(1-y) on the lower region {y < 1}
/// (flat), continuous across the interface {y = 1}. Basepoint a = (0, 1).

/// Conformal density at (x, y).
double metric_density(double y);

/// Distance in the hyperbolic upper half-plane with density 1/y
/// (valid for y > 0): cosh d = 1 + |z1-z2|^2 / (2 y1 y2).
double hyperbolic_distance(double x1, double y1, double x2, double y2);

/// Distance in the universal cover of the exterior of the unit disk between
/// (theta1, rho1) and (theta2, rho2), rho >= 1, theta unbounded. Straight
/// chord when it clears the disk, tangent-arc-tangent otherwise.
double flat_cover_distance(double theta1, double rho1, double theta2, double rho2);

/// Cover coordinates of a lower-region point x + iy (y < 1): theta = x,
/// rho = exp(1 - y).
double cover_rho(double y);

/// Full hyperbolic disk area 4*pi*sinh^2(r/2); upper bound for the
/// upper-region ball area.
double hyperbolic_ball_area(double r);

/// Closed form for the interface length inside the ball: 4*sinh(r/2).
double beta_length_closed_form(double r);

/// Distance-from-basepoint evaluator. Lower-region distances minimize
/// [hyperbolic leg to a crossing point on the interface] + [flat cover leg]
/// over a precomputed crossing grid with golden-section refinement.
class Distancer {
public:
    /// max_radius bounds the crossing window; queries are valid for points
    /// within that distance of the basepoint.
    explicit Distancer(double max_radius, std::size_t grid_size = 4096);

    /// distance from a = (0,1) to (x, y); any y above the lower cutoff.
    double operator()(double x, double y) const;

    /// distance from a to the lower-region point (theta, rho), rho >= 1.
    double lower_distance(double theta, double rho) const;

    double max_radius() const { return max_radius_; }

private:
    double max_radius_;
    std::vector<double> u_, cos_u_, sin_u_, cost_;
    double refine(double theta, double rho, std::size_t i) const;
};

/// Half-width x_r of the interface arc within distance r, computed from the
/// distance function by bisection (the closed form is 2*sinh(r/2)).
double beta_half_width(const Distancer& d, double r);

struct Areas {
    double upper = 0;  // area of {y >= 1} part of the ball
    double lower = 0;  // area of {y < 1} part
};

/// Ball areas by dimension-reduced adaptive quadrature:
/// upper region via geodesic polar slices (the region is star-shaped from a),
/// lower region via radial slices in cover coordinates (distance is monotone
/// in rho). rel_tol applies to each area.
Areas ball_areas(const Distancer& d, double r, double rel_tol = 1e-3);

/// Upper-region slice length: metric length of the geodesic circle of radius
/// t around a clipped to {y >= 1}; equals 4*sinh(t)*atan(exp(-t/2)).
double upper_circle_length(double t);

struct BallReportRow {
    double r = 0;
    double length_beta = 0;
    double area_upper = 0;
    double area_lower = 0;
    double curvature_integral = 0;  // = -area_upper
    double ratio = 0;               // area_upper / (area_upper + area_lower)
};

struct SurfaceSummary {
    std::vector<BallReportRow> rows;
    double epsilon_estimate = 0;  // min ratio over the grid
    double kappa = 0;             // min over grid of area_upper / length_beta
    double big_k = 0;             // max over grid of area_lower / length_beta
};

SurfaceSummary curvature_report(const std::vector<double>& r_grid, double rel_tol = 1e-3);

/// Bounding box that provably contains the ball of radius r (with slack).
struct BoundingBox {
    double x_min, x_max, y_min, y_max;
};
BoundingBox ball_bounding_box(double r);

}  // namespace speiser::surface
