#include "esgsent/kernels.hpp"

namespace esg::kernels {

namespace {

void composite_scalar(const std::int8_t* weights, const double* scores, double* out,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<double>(weights[i]) * scores[i] + 0.0;
    }
}

void open_returns_scalar(const double* opens, double* out, std::size_t n_out) {
    for (std::size_t i = 0; i < n_out; ++i) {
        out[i] = 100.0 * (opens[i + 1] - opens[i]) / opens[i];
    }
}

Moments moments_scalar(const double* x, const double* y, std::size_t n) {
    Moments m;
    if (n == 0) {
        return m;
    }
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    m.mean_x = sx / static_cast<double>(n);
    m.mean_y = sy / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

}  // namespace

const KernelTable& scalar_table() {
    static constexpr KernelTable table{Isa::Scalar, composite_scalar, open_returns_scalar,
                                       moments_scalar};
    return table;
}

}  // namespace esg::kernels
