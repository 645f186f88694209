#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace speiser::kernels {

/// Dense vector kernels behind the conjugate-gradient solver and the
/// crossing-point scans of the surface module. Scalar reference versions and
/// AVX2 variants compute identical results; the active backend is picked once
/// at startup from CPU capabilities and can be forced for testing.

enum class Backend { Scalar, Avx2 };

Backend active_backend();
/// Forces a backend; throws std::runtime_error if unsupported on this CPU.
void force_backend(Backend b);
std::string backend_name();

double dot(std::span<const double> x, std::span<const double> y);
double norm2_sq(std::span<const double> x);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// y = x + b * y
void xpby(std::span<const double> x, double b, std::span<double> y);
double max_abs_diff(std::span<const double> x, std::span<const double> y);

/// One scan of the crossing-point objective used by the surface module:
/// minimizes cost[i] + flat_distance((u[i], 1), (theta, rho)) over i, where
/// flat_distance is the universal-cover distance of the exterior of the unit
/// disk. cos_u and sin_u hold cos(u[i]) and sin(u[i]).
/// Returns the minimal value; *argmin gets the minimizing index.
double crossing_scan(std::span<const double> u, std::span<const double> cos_u,
                     std::span<const double> sin_u, std::span<const double> cost,
                     double theta, double rho, std::size_t* argmin);

namespace detail {
double dot_scalar(const double*, const double*, std::size_t);
double dot_avx2(const double*, const double*, std::size_t);
double norm2_scalar(const double*, std::size_t);
double norm2_avx2(const double*, std::size_t);
void axpy_scalar(double, const double*, double*, std::size_t);
void axpy_avx2(double, const double*, double*, std::size_t);
void xpby_scalar(const double*, double, double*, std::size_t);
void xpby_avx2(const double*, double, double*, std::size_t);
double max_abs_diff_scalar(const double*, const double*, std::size_t);
double max_abs_diff_avx2(const double*, const double*, std::size_t);
double crossing_scan_scalar(const double*, const double*, const double*, const double*,
                            std::size_t, double, double, std::size_t*);
double crossing_scan_avx2(const double*, const double*, const double*, const double*,
                          std::size_t, double, double, std::size_t*);
bool avx2_available();
}  // namespace detail

}  // namespace speiser::kernels
