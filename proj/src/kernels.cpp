#include "speiser/kernels.hpp"

#include <cmath>
#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SPEISER_X86 1
#else
#define SPEISER_X86 0
#endif

namespace speiser::kernels {

namespace detail {

bool avx2_available() {
#if SPEISER_X86
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double norm2_scalar(const double* x, std::size_t n) { return dot_scalar(x, x, n); }

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby_scalar(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

double crossing_scan_scalar(const double* u, const double* cos_u, const double* sin_u,
                            const double* cost, std::size_t n, double theta, double rho,
                            std::size_t* argmin) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double rho2 = rho * rho;
    const double tang = std::sqrt(std::max(0.0, rho2 - 1.0));
    const double reach = std::acos(1.0 / rho);  // angular reach of the chord case
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double delta = std::fabs(theta - u[i]);
        double flat;
        if (delta <= reach) {
            double cd = ct * cos_u[i] + st * sin_u[i];
            flat = std::sqrt(std::max(0.0, 1.0 + rho2 - 2.0 * rho * cd));
        } else {
            flat = tang + (delta - reach);
        }
        double v = cost[i] + flat;
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    if (argmin) *argmin = best_i;
    return best;
}

#if SPEISER_X86

__attribute__((target("avx2,fma"))) double dot_avx2(const double* x, const double* y,
                                                    std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

__attribute__((target("avx2,fma"))) double norm2_avx2(const double* x, std::size_t n) {
    return dot_avx2(x, x, n);
}

__attribute__((target("avx2,fma"))) void axpy_avx2(double a, const double* x, double* y,
                                                   std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) void xpby_avx2(const double* x, double b, double* y,
                                                   std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(vb, vy, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

__attribute__((target("avx2,fma"))) double max_abs_diff_avx2(const double* x, const double* y,
                                                             std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        vm = _mm256_max_pd(vm, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

__attribute__((target("avx2,fma"))) double crossing_scan_avx2(
    const double* u, const double* cos_u, const double* sin_u, const double* cost,
    std::size_t n, double theta, double rho, std::size_t* argmin) {
    const double rho2 = rho * rho;
    const double tang_s = std::sqrt(std::max(0.0, rho2 - 1.0));
    const double reach_s = std::acos(1.0 / rho);

    const __m256d vtheta = _mm256_set1_pd(theta);
    const __m256d vct = _mm256_set1_pd(std::cos(theta));
    const __m256d vst = _mm256_set1_pd(std::sin(theta));
    const __m256d vrho2p1 = _mm256_set1_pd(1.0 + rho2);
    const __m256d vm2rho = _mm256_set1_pd(-2.0 * rho);
    const __m256d vtang = _mm256_set1_pd(tang_s);
    const __m256d vreach = _mm256_set1_pd(reach_s);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d vzero = _mm256_setzero_pd();

    __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vbesti = _mm256_set1_pd(0.0);
    __m256d vidx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d vfour = _mm256_set1_pd(4.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d delta = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(vtheta, _mm256_loadu_pd(u + i)));
        __m256d cd = _mm256_fmadd_pd(vct, _mm256_loadu_pd(cos_u + i),
                                     _mm256_mul_pd(vst, _mm256_loadu_pd(sin_u + i)));
        __m256d chord2 = _mm256_fmadd_pd(vm2rho, cd, vrho2p1);
        __m256d chord = _mm256_sqrt_pd(_mm256_max_pd(chord2, vzero));
        __m256d wrap = _mm256_add_pd(vtang, _mm256_sub_pd(delta, vreach));
        __m256d use_chord = _mm256_cmp_pd(delta, vreach, _CMP_LE_OQ);
        __m256d flat = _mm256_blendv_pd(wrap, chord, use_chord);
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(cost + i), flat);
        __m256d better = _mm256_cmp_pd(v, vbest, _CMP_LT_OQ);
        vbest = _mm256_blendv_pd(vbest, v, better);
        vbesti = _mm256_blendv_pd(vbesti, vidx, better);
        vidx = _mm256_add_pd(vidx, vfour);
    }

    alignas(32) double lane_v[4], lane_i[4];
    _mm256_store_pd(lane_v, vbest);
    _mm256_store_pd(lane_i, vbesti);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (int l = 0; l < 4; ++l) {
        if (lane_v[l] < best ||
            (lane_v[l] == best && static_cast<std::size_t>(lane_i[l]) < best_i)) {
            best = lane_v[l];
            best_i = static_cast<std::size_t>(lane_i[l]);
        }
    }
    for (; i < n; ++i) {
        std::size_t one = 0;
        double v = crossing_scan_scalar(u + i, cos_u + i, sin_u + i, cost + i, 1, theta, rho, &one);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    if (argmin) *argmin = best_i;
    return best;
}

#else  // !SPEISER_X86

double dot_avx2(const double*, const double*, std::size_t) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}
double norm2_avx2(const double*, std::size_t) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}
void axpy_avx2(double, const double*, double*, std::size_t) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}
void xpby_avx2(const double*, double, double*, std::size_t) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}
double max_abs_diff_avx2(const double*, const double*, std::size_t) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}
double crossing_scan_avx2(const double*, const double*, const double*, const double*, std::size_t,
                          double, double, std::size_t*) {
    throw std::runtime_error("avx2 backend unavailable on this architecture");
}

#endif

}  // namespace detail

namespace {
Backend g_backend = detail::avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !detail::avx2_available())
        throw std::runtime_error("force_backend: avx2 not available");
    g_backend = b;
}

std::string backend_name() { return g_backend == Backend::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> x, std::span<const double> y) {
    return g_backend == Backend::Avx2 ? detail::dot_avx2(x.data(), y.data(), x.size())
                                      : detail::dot_scalar(x.data(), y.data(), x.size());
}

double norm2_sq(std::span<const double> x) {
    return g_backend == Backend::Avx2 ? detail::norm2_avx2(x.data(), x.size())
                                      : detail::norm2_scalar(x.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    g_backend == Backend::Avx2 ? detail::axpy_avx2(a, x.data(), y.data(), x.size())
                               : detail::axpy_scalar(a, x.data(), y.data(), x.size());
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
    g_backend == Backend::Avx2 ? detail::xpby_avx2(x.data(), b, y.data(), x.size())
                               : detail::xpby_scalar(x.data(), b, y.data(), x.size());
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    return g_backend == Backend::Avx2 ? detail::max_abs_diff_avx2(x.data(), y.data(), x.size())
                                      : detail::max_abs_diff_scalar(x.data(), y.data(), x.size());
}

double crossing_scan(std::span<const double> u, std::span<const double> cos_u,
                     std::span<const double> sin_u, std::span<const double> cost, double theta,
                     double rho, std::size_t* argmin) {
    return g_backend == Backend::Avx2
               ? detail::crossing_scan_avx2(u.data(), cos_u.data(), sin_u.data(), cost.data(),
                                            u.size(), theta, rho, argmin)
               : detail::crossing_scan_scalar(u.data(), cos_u.data(), sin_u.data(), cost.data(),
                                              u.size(), theta, rho, argmin);
}

}  // namespace speiser::kernels
