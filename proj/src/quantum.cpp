#include "zapsim/quantum.hpp"

#include "zapsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace zapsim
{
namespace
{

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;
constexpr double kTableHalfWidth = 6.0;
constexpr std::size_t kTableNodes = std::size_t{1} << 14;

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

HeraldedState::HeraldedState(double eta) : eta_(eta)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ValidationError("single-photon fraction eta must lie in [0, 1]");
}

double quadrature_pdf(const HeraldedState& s, double x)
{
    const double g = kInvSqrtPi * std::exp(-x * x);
    return (1.0 - s.eta()) * g + s.eta() * 2.0 * x * x * g;
}

double quadrature_cdf(const HeraldedState& s, double x)
{
    // int |psi1|^2 = vacuum CDF - x e^{-x^2} / sqrt(pi)
    const double vacuum = 0.5 * std::erfc(-x);
    return vacuum - s.eta() * x * std::exp(-x * x) * kInvSqrtPi;
}

QuadratureSample sample_quadratures(const HeraldedState& s, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw ValidationError("sample count must be >= 1");

    std::vector<double> nodes(kTableNodes);
    std::vector<double> cdf(kTableNodes);
    const double step = 2.0 * kTableHalfWidth / static_cast<double>(kTableNodes - 1);
    for (std::size_t i = 0; i < kTableNodes; ++i)
    {
        nodes[i] = -kTableHalfWidth + step * static_cast<double>(i);
        cdf[i] = quadrature_cdf(s, nodes[i]);
    }
    const double lo = cdf.front();
    const double span = cdf.back() - lo;
    for (double& c : cdf)
        c = (c - lo) / span;

    QuadratureSample q;
    q.seed = seed;
    q.values.resize(n);
    std::mt19937_64 rng(seed);
    for (double& v : q.values)
    {
        const double u = uniform01(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t hi = static_cast<std::size_t>(it - cdf.begin());
        hi = std::clamp<std::size_t>(hi, 1, kTableNodes - 1);
        // Skip flat table segments (exact zero density is only at x = 0 for eta = 1).
        std::size_t lo_i = hi - 1;
        while (lo_i > 0 && cdf[lo_i] == cdf[hi])
            --lo_i;
        const double dc = cdf[hi] - cdf[lo_i];
        const double frac = dc > 0.0 ? (u - cdf[lo_i]) / dc : 0.5;
        v = nodes[lo_i] + frac * (nodes[hi] - nodes[lo_i]);
    }
    return q;
}

EtaEstimate estimate_eta(std::span<const double> values)
{
    if (values.size() < 2)
        throw ValidationError("eta estimation needs at least two samples");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double x : values)
        mean += x * x;
    mean /= n;
    double var = 0.0;
    bool constant = true;
    for (double x : values)
    {
        const double d = x * x - mean;
        var += d * d;
        constant = constant && x == values[0];
    }
    if (constant)
        throw ValidationError("eta estimation on a constant sample is degenerate");
    var /= n - 1.0;

    EtaEstimate e;
    e.raw = mean - 0.5;
    e.eta = std::clamp(e.raw, 0.0, 1.0);
    e.clamped = e.eta != e.raw;
    e.standard_error = std::sqrt(var / n);
    return e;
}

EtaEstimate estimate_eta(const QuadratureSample& q) { return estimate_eta(q.values); }

double wigner(const HeraldedState& s, double x, double p)
{
    const double r2 = x * x + p * p;
    const double g = std::exp(-r2) * std::numbers::inv_pi;
    return (1.0 - s.eta()) * g + s.eta() * (2.0 * r2 - 1.0) * g;
}

double WignerGrid::coordinate(std::size_t i) const
{
    if (i + 1 == n_side)
        return half_width;
    return -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(n_side - 1);
}

WignerGrid wigner_grid(const HeraldedState& s, double half_width, std::size_t n_side)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ValidationError("Wigner grid half-width must be positive");
    if (n_side < 2)
        throw ValidationError("Wigner grid needs at least two points per side");
    WignerGrid g;
    g.half_width = half_width;
    g.n_side = n_side;
    g.values.resize(n_side * n_side);
    for (std::size_t ip = 0; ip < n_side; ++ip)
    {
        for (std::size_t ix = 0; ix < n_side; ++ix)
            g.values[ip * n_side + ix] = wigner(s, g.coordinate(ix), g.coordinate(ip));
    }
    return g;
}

bool is_nonclassical(const HeraldedState& s) { return s.eta() > 0.5; }

} // namespace zapsim
