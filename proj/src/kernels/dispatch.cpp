#include <cassert>
#include <cstdlib>
#include <string>

#include "esgsent/kernels.hpp"

namespace esg::kernels {

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
        case Isa::Neon:
            return "neon";
    }
    return "unknown";
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("ESGSENT_ISA"); forced && std::string(forced) == "scalar") {
        return scalar_table();
    }
    if (const auto* t = avx2_table()) {
        return *t;
    }
    if (const auto* t = neon_table()) {
        return *t;
    }
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

void composite_batch(std::span<const std::int8_t> weights, std::span<const double> scores,
                     std::span<double> out) {
    assert(weights.size() == scores.size() && out.size() == scores.size());
    active().composite(weights.data(), scores.data(), out.data(), out.size());
}

void open_returns(std::span<const double> opens, std::span<double> out) {
    assert(opens.size() == out.size() + 1);
    active().open_returns(opens.data(), out.data(), out.size());
}

Moments moments(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    return active().moments(x.data(), y.data(), x.size());
}

}  // namespace esg::kernels
