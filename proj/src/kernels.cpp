#include "octaplan/kernels.hpp"

#include <atomic>
#include <cmath>

namespace octa::kernels {

namespace detail {

void conformal_weight_scalar(const double* xs, const double* ys, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double d = 1.0 - xs[i] * xs[i] - ys[i] * ys[i];
        out[i] = 4.0 / (d * d);
    }
}

void horocycle_bracket_scalar(const double* xs, const double* ys, double bx, double by,
                              double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double num = 1.0 - xs[i] * xs[i] - ys[i] * ys[i];
        double dx = xs[i] - bx, dy = ys[i] - by;
        out[i] = std::log(num / (dx * dx + dy * dy));
    }
}

void wave_scalar(const double* xs, const double* ys, double rho, double bx, double by,
                 double* re, double* im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double num = 1.0 - xs[i] * xs[i] - ys[i] * ys[i];
        double dx = xs[i] - bx, dy = ys[i] - by;
        double br = std::log(num / (dx * dx + dy * dy));
        double amp = std::exp(0.5 * br);
        re[i] = amp * std::cos(rho * br);
        im[i] = amp * std::sin(rho * br);
    }
}

} // namespace detail

namespace {
std::atomic<bool> g_force_scalar{false};
} // namespace

bool simd_available() {
#ifdef OCTAPLAN_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool force_scalar(bool on) { return g_force_scalar.exchange(on); }

bool using_simd() { return simd_available() && !g_force_scalar.load(); }

void conformal_weight(const double* xs, const double* ys, double* out, std::size_t n) {
#ifdef OCTAPLAN_HAVE_AVX2
    if (using_simd()) {
        detail::conformal_weight_avx2(xs, ys, out, n);
        return;
    }
#endif
    detail::conformal_weight_scalar(xs, ys, out, n);
}

void horocycle_bracket(const double* xs, const double* ys, double bx, double by,
                       double* out, std::size_t n) {
#ifdef OCTAPLAN_HAVE_AVX2
    if (using_simd()) {
        detail::horocycle_bracket_avx2(xs, ys, bx, by, out, n);
        return;
    }
#endif
    detail::horocycle_bracket_scalar(xs, ys, bx, by, out, n);
}

void wave(const double* xs, const double* ys, double rho, double bx, double by,
          double* re, double* im, std::size_t n) {
#ifdef OCTAPLAN_HAVE_AVX2
    if (using_simd()) {
        detail::wave_avx2(xs, ys, rho, bx, by, re, im, n);
        return;
    }
#endif
    detail::wave_scalar(xs, ys, rho, bx, by, re, im, n);
}

} // namespace octa::kernels
