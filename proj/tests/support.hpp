#ifndef ZAPSIM_TESTS_SUPPORT_HPP
#define ZAPSIM_TESTS_SUPPORT_HPP

#include "zapsim/field.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testing
{

inline constexpr double kPi = 3.14159265358979323846;

// Grid used by the model-level tests: the production default.
inline zapsim::Grid default_grid() { return zapsim::make_grid(std::size_t{1} << 19, 10e-15); }

inline zapsim::TemporalField input_pulse(const zapsim::Grid& g)
{
    return zapsim::gaussian_pulse(g, 100e-15, 0.0, 0.0);
}

inline zapsim::ComplexVector random_vector(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    zapsim::ComplexVector v(n);
    for (auto& z : v)
        z = {d(rng), d(rng)};
    return v;
}

inline double relative_rms(std::span<const zapsim::Complex> a, std::span<const zapsim::Complex> b)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

} // namespace testing

#endif
