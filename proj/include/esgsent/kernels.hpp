#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels_scalar.cpp; vector variants live beside it and are picked once at
// startup from the CPU's capabilities. Elementwise kernels are bit-identical
// across variants. Reductions differ only by summation order.

namespace esg::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Centered second moments of a pair of series, two-pass form.
struct Moments {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
};

struct KernelTable {
    Isa isa;
    /// out[i] = weights[i] * scores[i] (+0.0, so no negative zero).
    void (*composite)(const std::int8_t* weights, const double* scores, double* out,
                      std::size_t n);
    /// out[i] = 100 * (opens[i+1] - opens[i]) / opens[i] for i < n_out.
    void (*open_returns)(const double* opens, double* out, std::size_t n_out);
    Moments (*moments)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best supported table. `ESGSENT_ISA=scalar` in the environment forces the
/// scalar reference.
const KernelTable& active();

// Span front ends over `active()`. Sizes are checked with assertions.
void composite_batch(std::span<const std::int8_t> weights, std::span<const double> scores,
                     std::span<double> out);
void open_returns(std::span<const double> opens, std::span<double> out);
Moments moments(std::span<const double> x, std::span<const double> y);

}  // namespace esg::kernels
