#include "speiser/surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "speiser/kernels.hpp"

namespace speiser::surface {

namespace {

// acosh(1 + z), stable for small z.
double acosh1p(double z) {
    if (z < 0) z = 0;
    return std::log1p(z + std::sqrt(z * (z + 2.0)));
}

// Adaptive Simpson with absolute tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 40) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Fixed coarse pass to get the scale, then adaptive to a relative tolerance.
double two_pass_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int depth = 40) {
    const int n = 32;
    double rough = 0;
    double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        double x0 = a + i * h;
        rough += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
    }
    double scale = std::max(std::fabs(rough), 1e-12);
    return adaptive_simpson(f, a, b, 0.5 * rel_tol * scale, depth);
}

}  // namespace

double metric_density(double y) { return y >= 1.0 ? 1.0 / y : std::exp(1.0 - y); }

double cover_rho(double y) { return std::exp(1.0 - y); }

double hyperbolic_distance(double x1, double y1, double x2, double y2) {
    if (y1 <= 0 || y2 <= 0) throw DomainError("hyperbolic_distance: y must be positive");
    double dx = x1 - x2, dy = y1 - y2;
    return acosh1p((dx * dx + dy * dy) / (2.0 * y1 * y2));
}

double flat_cover_distance(double theta1, double rho1, double theta2, double rho2) {
    if (rho1 < 1.0 || rho2 < 1.0) throw DomainError("flat_cover_distance: rho must be >= 1");
    double delta = std::fabs(theta1 - theta2);
    double arc = delta - std::acos(1.0 / rho1) - std::acos(1.0 / rho2);
    if (arc > 0) {
        return std::sqrt(std::max(0.0, rho1 * rho1 - 1.0)) +
               std::sqrt(std::max(0.0, rho2 * rho2 - 1.0)) + arc;
    }
    double s = std::sin(0.5 * delta);
    double dr = rho1 - rho2;
    return std::sqrt(dr * dr + 4.0 * rho1 * rho2 * s * s);
}

double hyperbolic_ball_area(double r) {
    double sh = std::sinh(0.5 * r);
    return 4.0 * M_PI * sh * sh;
}

double beta_length_closed_form(double r) { return 4.0 * std::sinh(0.5 * r); }

Distancer::Distancer(double max_radius, std::size_t grid_size) : max_radius_(max_radius) {
    if (max_radius <= 0) throw DomainError("Distancer: max_radius must be positive");
    if (grid_size < 16) grid_size = 16;
    // Crossing points live on the interface within the ball (plus slack).
    double span = 2.0 * std::sinh(0.5 * max_radius) + 2.0;
    u_.resize(grid_size);
    cos_u_.resize(grid_size);
    sin_u_.resize(grid_size);
    cost_.resize(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        double u = -span + 2.0 * span * static_cast<double>(i) /
                               static_cast<double>(grid_size - 1);
        u_[i] = u;
        cos_u_[i] = std::cos(u);
        sin_u_[i] = std::sin(u);
        cost_[i] = acosh1p(0.5 * u * u);  // hyperbolic leg from a to (u, 1)
    }
}

double Distancer::refine(double theta, double rho, std::size_t i) const {
    auto objective = [&](double u) {
        return acosh1p(0.5 * u * u) + flat_cover_distance(u, 1.0, theta, rho);
    };
    double lo = u_[i == 0 ? 0 : i - 1];
    double hi = u_[std::min(i + 1, u_.size() - 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 90 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++it) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    return std::min(f1, f2);
}

double Distancer::lower_distance(double theta, double rho) const {
    if (rho < 1.0) throw DomainError("lower_distance: rho must be >= 1");
    std::size_t argmin = 0;
    kernels::crossing_scan(u_, cos_u_, sin_u_, cost_, theta, rho, &argmin);
    return refine(theta, rho, argmin);
}

double Distancer::operator()(double x, double y) const {
    if (y >= 1.0) return hyperbolic_distance(0.0, 1.0, x, y);
    return lower_distance(x, cover_rho(y));
}

double beta_half_width(const Distancer& d, double r) {
    if (r <= 0) return 0.0;
    double lo = 0.0, hi = 2.0 * std::sinh(0.5 * r) + 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (d(mid, 1.0) <= r ? lo : hi) = mid;
        if (hi - lo <= 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double upper_circle_length(double t) {
    if (t <= 0) return 0.0;
    return 4.0 * std::sinh(t) * std::atan(std::exp(-0.5 * t));
}

namespace {

double area_upper(double r, double rel_tol) {
    // Geodesic polar slices: the upper region is star-shaped from a (geodesic
    // arcs in the half-plane are concave in y, so once a ray leaves {y >= 1}
    // it cannot return), hence area = integral of the clipped circle length.
    return two_pass_simpson(upper_circle_length, 0.0, r, 0.1 * rel_tol);
}

double area_lower(const Distancer& d, double r, double rel_tol) {
    // Radial slices in cover coordinates: the distance is strictly increasing
    // in rho, so each slice {theta} meets the ball in an interval [1, R].
    // Area element is rho drho dtheta, so a slice contributes (R^2 - 1) / 2.
    auto radius_at = [&](double theta) {
        if (d(theta, 1.0) > r) return 1.0;
        double lo = 1.0, hi = 1.0 + r;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (d.lower_distance(theta, mid) <= r ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto slice = [&](double theta) {
        double R = radius_at(theta);
        return 0.5 * (R * R - 1.0);
    };
    double span = 2.0 * std::sinh(0.5 * r) + 1e-9;
    return 2.0 * two_pass_simpson(slice, 0.0, span, 0.1 * rel_tol, 24);
}

}  // namespace

Areas ball_areas(const Distancer& d, double r, double rel_tol) {
    if (r <= 0) throw DomainError("ball_areas: radius must be positive");
    if (r > d.max_radius()) throw DomainError("ball_areas: radius above the distancer window");
    Areas a;
    a.upper = area_upper(r, rel_tol);
    a.lower = area_lower(d, r, rel_tol);
    return a;
}

SurfaceSummary curvature_report(const std::vector<double>& r_grid, double rel_tol) {
    if (r_grid.empty()) throw DomainError("curvature_report: empty grid");
    for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
        if (r_grid[i + 1] <= r_grid[i] || r_grid[i] <= 0)
            throw DomainError("curvature_report: grid must be positive and increasing");
    Distancer dist(r_grid.back() + 0.5);
    SurfaceSummary sum;
    sum.epsilon_estimate = std::numeric_limits<double>::infinity();
    sum.kappa = std::numeric_limits<double>::infinity();
    sum.big_k = 0;
    for (double r : r_grid) {
        BallReportRow row;
        row.r = r;
        row.length_beta = 2.0 * beta_half_width(dist, r);
        Areas a = ball_areas(dist, r, rel_tol);
        row.area_upper = a.upper;
        row.area_lower = a.lower;
        row.curvature_integral = -a.upper;
        row.ratio = a.upper / (a.upper + a.lower);
        sum.epsilon_estimate = std::min(sum.epsilon_estimate, row.ratio);
        sum.kappa = std::min(sum.kappa, a.upper / row.length_beta);
        sum.big_k = std::max(sum.big_k, a.lower / row.length_beta);
        sum.rows.push_back(row);
    }
    return sum;
}

BoundingBox ball_bounding_box(double r) {
    BoundingBox b;
    b.x_max = 2.0 * std::sinh(0.5 * r) + r + 1.0;
    b.x_min = -b.x_max;
    b.y_max = std::exp(r) + 1.0;
    b.y_min = -std::log1p(r);
    return b;
}

}  // namespace speiser::surface
