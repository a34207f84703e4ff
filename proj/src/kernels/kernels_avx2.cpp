#include "esgsent/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define ESG_HAVE_AVX2_KERNELS 1
#define ESG_AVX2 __attribute__((target("avx2")))
#endif

namespace esg::kernels {

#ifdef ESG_HAVE_AVX2_KERNELS

namespace {

ESG_AVX2 void composite_avx2(const std::int8_t* weights, const double* scores, double* out,
                             std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::int32_t packed;
        __builtin_memcpy(&packed, weights + i, sizeof packed);
        const __m128i w8 = _mm_cvtsi32_si128(packed);
        const __m256d w = _mm256_cvtepi32_pd(_mm_cvtepi8_epi32(w8));
        const __m256d s = _mm256_loadu_pd(scores + i);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(w, s), zero));
    }
    for (; i < n; ++i) {
        out[i] = static_cast<double>(weights[i]) * scores[i] + 0.0;
    }
}

ESG_AVX2 void open_returns_avx2(const double* opens, double* out, std::size_t n_out) {
    const __m256d hundred = _mm256_set1_pd(100.0);
    std::size_t i = 0;
    for (; i + 4 <= n_out; i += 4) {
        const __m256d prev = _mm256_loadu_pd(opens + i);
        const __m256d next = _mm256_loadu_pd(opens + i + 1);
        const __m256d diff = _mm256_mul_pd(hundred, _mm256_sub_pd(next, prev));
        _mm256_storeu_pd(out + i, _mm256_div_pd(diff, prev));
    }
    for (; i < n_out; ++i) {
        out[i] = 100.0 * (opens[i + 1] - opens[i]) / opens[i];
    }
}

ESG_AVX2 double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

ESG_AVX2 Moments moments_avx2(const double* x, const double* y, std::size_t n) {
    Moments m;
    if (n == 0) {
        return m;
    }
    __m256d vx = _mm256_setzero_pd();
    __m256d vy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vx = _mm256_add_pd(vx, _mm256_loadu_pd(x + i));
        vy = _mm256_add_pd(vy, _mm256_loadu_pd(y + i));
    }
    double sx = hsum(vx);
    double sy = hsum(vy);
    for (; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    m.mean_x = sx / static_cast<double>(n);
    m.mean_y = sy / static_cast<double>(n);

    const __m256d mx = _mm256_set1_pd(m.mean_x);
    const __m256d my = _mm256_set1_pd(m.mean_y);
    __m256d vxx = _mm256_setzero_pd();
    __m256d vyy = _mm256_setzero_pd();
    __m256d vxy = _mm256_setzero_pd();
    i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), mx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), my);
        vxx = _mm256_add_pd(vxx, _mm256_mul_pd(dx, dx));
        vyy = _mm256_add_pd(vyy, _mm256_mul_pd(dy, dy));
        vxy = _mm256_add_pd(vxy, _mm256_mul_pd(dx, dy));
    }
    m.sxx = hsum(vxx);
    m.syy = hsum(vyy);
    m.sxy = hsum(vxy);
    for (; i < n; ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

}  // namespace

const KernelTable* avx2_table() {
    static constexpr KernelTable table{Isa::Avx2, composite_avx2, open_returns_avx2,
                                       moments_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace esg::kernels
