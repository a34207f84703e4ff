#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's numeric paths.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace esg::test {

/// Pearson r straight from the definition: population covariance over the
/// product of population standard deviations, accumulated in long double.
inline double definitional_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long double mx = 0;
    long double my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double cov = 0;
    long double vx = 0;
    long double vy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    cov /= n;
    const long double sx = std::sqrt(vx / n);
    const long double sy = std::sqrt(vy / n);
    return static_cast<double>(cov / (sx * sy));
}

/// Product of (1 + r/100) minus one, in percent.
inline double compound_percent(const std::vector<double>& percents) {
    long double growth = 1;
    for (double r : percents) {
        growth *= 1 + static_cast<long double>(r) / 100;
    }
    return static_cast<double>((growth - 1) * 100);
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& e : v) {
        e = dist(rng);
    }
    return v;
}

}  // namespace esg::test
