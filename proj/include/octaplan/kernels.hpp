// Batch pointwise kernels (conformal weight, horocycle bracket, hyperbolic
// plane waves): scalar reference implementations plus an AVX2 variant
// selected at runtime; both paths are equivalence-tested.
#pragma once

#include <complex>
#include <cstddef>

namespace octa::kernels {

// True when the AVX2 path is compiled in and supported by this CPU.
bool simd_available();
// Test hook: force the scalar path (returns the previous setting).
bool force_scalar(bool on);
// Which path batch calls will take right now.
bool using_simd();

// out[i] = 4 / (1 - x^2 - y^2)^2
void conformal_weight(const double* xs, const double* ys, double* out, std::size_t n);

// out[i] = <z_i, b> = log((1 - |z|^2) / |z - b|^2), |b| = 1
void horocycle_bracket(const double* xs, const double* ys, double bx, double by,
                       double* out, std::size_t n);

// e_{rho,b}(z) = exp((i rho + 1/2) <z, b>): re/im parts
void wave(const double* xs, const double* ys, double rho, double bx, double by,
          double* re, double* im, std::size_t n);

namespace detail {
void conformal_weight_scalar(const double* xs, const double* ys, double* out, std::size_t n);
void horocycle_bracket_scalar(const double* xs, const double* ys, double bx, double by,
                              double* out, std::size_t n);
void wave_scalar(const double* xs, const double* ys, double rho, double bx, double by,
                 double* re, double* im, std::size_t n);
#ifdef OCTAPLAN_HAVE_AVX2
void conformal_weight_avx2(const double* xs, const double* ys, double* out, std::size_t n);
void horocycle_bracket_avx2(const double* xs, const double* ys, double bx, double by,
                            double* out, std::size_t n);
void wave_avx2(const double* xs, const double* ys, double rho, double bx, double by,
               double* re, double* im, std::size_t n);
#endif
} // namespace detail

} // namespace octa::kernels
