#include "esgsent/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace esg::kernels {

#if defined(__aarch64__)

namespace {

void composite_neon(const std::int8_t* weights, const double* scores, double* out,
                    std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const double w[2] = {static_cast<double>(weights[i]), static_cast<double>(weights[i + 1])};
        const float64x2_t prod = vmulq_f64(vld1q_f64(w), vld1q_f64(scores + i));
        vst1q_f64(out + i, vaddq_f64(prod, zero));
    }
    for (; i < n; ++i) {
        out[i] = static_cast<double>(weights[i]) * scores[i] + 0.0;
    }
}

void open_returns_neon(const double* opens, double* out, std::size_t n_out) {
    const float64x2_t hundred = vdupq_n_f64(100.0);
    std::size_t i = 0;
    for (; i + 2 <= n_out; i += 2) {
        const float64x2_t prev = vld1q_f64(opens + i);
        const float64x2_t next = vld1q_f64(opens + i + 1);
        const float64x2_t diff = vmulq_f64(hundred, vsubq_f64(next, prev));
        vst1q_f64(out + i, vdivq_f64(diff, prev));
    }
    for (; i < n_out; ++i) {
        out[i] = 100.0 * (opens[i + 1] - opens[i]) / opens[i];
    }
}

Moments moments_neon(const double* x, const double* y, std::size_t n) {
    Moments m;
    if (n == 0) {
        return m;
    }
    float64x2_t vx = vdupq_n_f64(0.0);
    float64x2_t vy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vx = vaddq_f64(vx, vld1q_f64(x + i));
        vy = vaddq_f64(vy, vld1q_f64(y + i));
    }
    double sx = vaddvq_f64(vx);
    double sy = vaddvq_f64(vy);
    for (; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    m.mean_x = sx / static_cast<double>(n);
    m.mean_y = sy / static_cast<double>(n);

    const float64x2_t mx = vdupq_n_f64(m.mean_x);
    const float64x2_t my = vdupq_n_f64(m.mean_y);
    float64x2_t vxx = vdupq_n_f64(0.0);
    float64x2_t vyy = vdupq_n_f64(0.0);
    float64x2_t vxy = vdupq_n_f64(0.0);
    i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), mx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), my);
        vxx = vaddq_f64(vxx, vmulq_f64(dx, dx));
        vyy = vaddq_f64(vyy, vmulq_f64(dy, dy));
        vxy = vaddq_f64(vxy, vmulq_f64(dx, dy));
    }
    m.sxx = vaddvq_f64(vxx);
    m.syy = vaddvq_f64(vyy);
    m.sxy = vaddvq_f64(vxy);
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

const KernelTable* neon_table() {
    static constexpr KernelTable table{Isa::Neon, composite_neon, open_returns_neon,
                                       moments_neon};
    return &table;
}

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace esg::kernels
