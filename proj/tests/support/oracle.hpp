#ifndef DIGITDIM_TESTS_ORACLE_HPP
#define DIGITDIM_TESTS_ORACLE_HPP

// Plain double-precision reference implementations. They share no code with
// the library and serve as independent oracles for the enclosures.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline std::vector<double> one_missing_weights(int b, int a)
{
    std::vector<double> p(static_cast<std::size_t>(b), 1.0 / (b - 1));
    p[static_cast<std::size_t>(a)] = 0.0;
    return p;
}

inline double g(const std::vector<double>& p, double x)
{
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        s += p[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) * x);
    return std::abs(s);
}

inline double cocycle(const std::vector<double>& p, int level, double x)
{
    const double b = static_cast<double>(p.size());
    double prod = 1.0;
    double y = x;
    for (int j = 0; j < level; ++j) {
        prod *= g(p, y - std::floor(y));
        y *= b;
    }
    return prod;
}

inline double grid_sum(const std::vector<double>& p, int level, double x)
{
    const double bl = std::pow(static_cast<double>(p.size()), level);
    double s = 0.0;
    for (long i = 0; i < static_cast<long>(bl); ++i)
        s += cocycle(p, level, x + static_cast<double>(i) / bl);
    return s;
}

/// prod_{j=1}^{depth} g(xi / b^j).
inline double truncated_coefficient(const std::vector<double>& p, long xi, int depth)
{
    const double b = static_cast<double>(p.size());
    double prod = 1.0;
    double scale = 1.0;
    for (int j = 1; j <= depth; ++j) {
        scale *= b;
        const double arg = static_cast<double>(xi) / scale;
        prod *= g(p, arg - std::floor(arg));
    }
    return prod;
}

/// Dense sampling of F_L over one half period.
inline std::pair<double, double> sampled_extrema(const std::vector<double>& p, int level, int samples)
{
    const double half = 0.5 / std::pow(static_cast<double>(p.size()), level);
    double mx = -1.0, mn = 1e300;
    for (int k = 0; k <= samples; ++k) {
        const double v = grid_sum(p, level, half * k / samples);
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    return {mx, mn};
}

} // namespace oracle

#endif
