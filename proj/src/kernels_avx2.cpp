// AVX2 variants: vectorized rational arithmetic; transcendental tails per
// lane with the same libm calls as the scalar path.
#ifdef OCTAPLAN_HAVE_AVX2

#include "octaplan/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace octa::kernels::detail {

namespace {

inline __m256d load4(const double* p) { return _mm256_loadu_pd(p); }

} // namespace

void conformal_weight_avx2(const double* xs, const double* ys, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0), four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = load4(xs + i), y = load4(ys + i);
        __m256d d = _mm256_sub_pd(one, _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)));
        _mm256_storeu_pd(out + i, _mm256_div_pd(four, _mm256_mul_pd(d, d)));
    }
    conformal_weight_scalar(xs + i, ys + i, out + i, n - i);
}

void horocycle_bracket_avx2(const double* xs, const double* ys, double bx, double by,
                            double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vbx = _mm256_set1_pd(bx), vby = _mm256_set1_pd(by);
    std::size_t i = 0;
    alignas(32) double ratio[4];
    for (; i + 4 <= n; i += 4) {
        __m256d x = load4(xs + i), y = load4(ys + i);
        __m256d num =
            _mm256_sub_pd(one, _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)));
        __m256d dx = _mm256_sub_pd(x, vbx), dy = _mm256_sub_pd(y, vby);
        __m256d den = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_store_pd(ratio, _mm256_div_pd(num, den));
        for (int k = 0; k < 4; ++k) out[i + k] = std::log(ratio[k]);
    }
    horocycle_bracket_scalar(xs + i, ys + i, bx, by, out + i, n - i);
}

void wave_avx2(const double* xs, const double* ys, double rho, double bx, double by,
               double* re, double* im, std::size_t n) {
    horocycle_bracket_avx2(xs, ys, bx, by, re, n); // re holds the bracket
    for (std::size_t i = 0; i < n; ++i) {
        double br = re[i];
        double amp = std::exp(0.5 * br);
        re[i] = amp * std::cos(rho * br);
        im[i] = amp * std::sin(rho * br);
    }
}

} // namespace octa::kernels::detail

#endif // OCTAPLAN_HAVE_AVX2
