#include "zapsim/modes.hpp"

#include "zapsim/error.hpp"
#include "zapsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zapsim
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormTolerance = 1e-9;

void require_same_grid(const Grid& a, const Grid& b)
{
    if (!(a == b))
        throw ValidationError("fields live on different grids");
}

void require_normalized(const TemporalField& f, const char* which)
{
    if (std::abs(pulse_energy(f) - 1.0) > kNormTolerance)
        throw ValidationError(std::string(which) + " mode is not normalised");
}

void check_delays(const Grid& grid, std::span<const double> delays)
{
    const double limit = 0.25 * grid.window();
    for (std::size_t i = 0; i < delays.size(); ++i)
    {
        if (!std::isfinite(delays[i]) || std::abs(delays[i]) > limit)
            throw ValidationError("delay outside +/- a quarter of the grid window");
        if (i > 0 && !(delays[i] > delays[i - 1]))
            throw ValidationError("delays must be strictly increasing");
    }
}

std::vector<double> scan(const CrossCorrelator& xc, std::span<const double> delays,
                         double (*reduce)(Complex))
{
    std::vector<double> ys(delays.size());
    parallel_for(delays.size(), [&](std::size_t i) { ys[i] = reduce(xc.at(delays[i])); });
    return ys;
}

} // namespace

void validate(const ScanCurve& c)
{
    if (c.xs.size() != c.ys.size())
        throw ValidationError("scan curve abscissae and values differ in length");
    for (std::size_t i = 0; i < c.xs.size(); ++i)
    {
        if (!std::isfinite(c.xs[i]) || !std::isfinite(c.ys[i]))
            throw ValidationError("scan curve holds a non-finite value");
        if (i > 0 && !(c.xs[i] > c.xs[i - 1]))
            throw ValidationError("scan curve abscissae must be strictly increasing");
    }
}

std::vector<double> linspace(double first, double last, std::size_t count)
{
    if (count < 2)
        throw ValidationError("linspace needs at least two points");
    std::vector<double> out(count);
    const double step = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = first + step * static_cast<double>(i);
    out.back() = last;
    return out;
}

TemporalField normalize(const TemporalField& f)
{
    const double e = pulse_energy(f);
    if (!(e > 0.0))
        throw ValidationError("cannot normalise a zero-energy field");
    return scaled(f, 1.0 / std::sqrt(e));
}

Complex overlap(const TemporalField& a, const TemporalField& b)
{
    require_same_grid(a.grid(), b.grid());
    require_normalized(a, "first");
    require_normalized(b, "second");
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j)
        sum += std::conj(a[j]) * b[j];
    return sum * a.grid().dt();
}

TemporalField delayed(const TemporalField& f, double tau)
{
    SpectralField s = to_spectrum(f);
    ComplexVector amp(s.amp().begin(), s.amp().end());
    for (std::size_t k = 0; k < amp.size(); ++k)
        amp[k] *= std::polar(1.0, kTwoPi * s.grid().detuning(k) * tau);
    return to_time(SpectralField(s.grid(), std::move(amp)));
}

CrossCorrelator::CrossCorrelator(const SpectralField& lo, const SpectralField& sig) : grid_(lo.grid())
{
    require_same_grid(lo.grid(), sig.grid());
    const std::size_t n = lo.size();
    ComplexVector p(n);
    double largest = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        p[k] = std::conj(lo[k]) * sig[k] * grid_.df();
        largest = std::max(largest, std::abs(p[k]));
    }
    const double floor = 1e-18 * largest;
    std::size_t lo_k = 0;
    std::size_t hi_k = n;
    while (lo_k < n && std::abs(p[lo_k]) <= floor)
        ++lo_k;
    while (hi_k > lo_k && std::abs(p[hi_k - 1]) <= floor)
        --hi_k;
    first_ = lo_k;
    product_.assign(p.begin() + static_cast<std::ptrdiff_t>(lo_k),
                    p.begin() + static_cast<std::ptrdiff_t>(hi_k));
}

Complex CrossCorrelator::at(double tau) const
{
    // exp(-2 pi i nu_k tau) by recurrence, reseeded exactly every block so
    // rounding drift stays near 1e-13.
    constexpr std::size_t kBlock = 1024;
    const Complex step = std::polar(1.0, -kTwoPi * grid_.df() * tau);
    Complex sum{0.0, 0.0};
    Complex phase;
    for (std::size_t i = 0; i < product_.size(); ++i)
    {
        if (i % kBlock == 0)
            phase = std::polar(1.0, -kTwoPi * grid_.detuning(first_ + i) * tau);
        sum += product_[i] * phase;
        phase *= step;
    }
    return sum;
}

ScanCurve visibility_curve(const TemporalField& sig, const TemporalField& lo,
                           std::span<const double> delays)
{
    require_same_grid(sig.grid(), lo.grid());
    check_delays(sig.grid(), delays);
    const CrossCorrelator xc(to_spectrum(normalize(lo)), to_spectrum(normalize(sig)));
    ScanCurve c;
    c.xs.assign(delays.begin(), delays.end());
    c.ys = scan(xc, delays, [](Complex z) { return std::abs(z); });
    c.label = "visibility";
    return c;
}

ScanCurve peak_normalized(const ScanCurve& c)
{
    ScanCurve out = c;
    const double peak = c.ys.empty() ? 0.0 : *std::max_element(c.ys.begin(), c.ys.end());
    if (peak > 0.0)
    {
        for (double& y : out.ys)
            y /= peak;
    }
    return out;
}

ScanCurve eta_curve(const TemporalField& input, const MediumParams& m, const TemporalField& lo,
                    double eta_base, std::span<const double> delays)
{
    if (!(eta_base >= 0.0 && eta_base <= 1.0))
        throw ValidationError("eta_base must lie in [0, 1]");
    require_same_grid(input.grid(), lo.grid());
    check_delays(input.grid(), delays);

    const SpectralField in = to_spectrum(normalize(input));
    const double te = energy_transmission(in, m);
    const SpectralField out = propagate(in, m);
    const double out_norm = std::sqrt(pulse_energy(out));
    ComplexVector unit(out.amp().begin(), out.amp().end());
    for (Complex& z : unit)
        z /= out_norm;
    const CrossCorrelator xc(to_spectrum(normalize(lo)), SpectralField(in.grid(), std::move(unit)));

    ScanCurve c;
    c.xs.assign(delays.begin(), delays.end());
    c.ys = scan(xc, delays, [](Complex z) { return std::norm(z); });
    for (double& y : c.ys)
        y = std::min(eta_base * te * y, eta_base * te);
    c.label = "eta";
    return c;
}

CurvePeak peak_eta(const ScanCurve& c)
{
    if (c.xs.empty() || c.xs.size() != c.ys.size())
        throw ValidationError("peak of an empty curve is undefined");
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.ys.size(); ++i)
    {
        if (c.ys[i] > c.ys[best])
            best = i;
    }
    return {c.xs[best], c.ys[best]};
}

std::vector<Lobe> find_lobes(const ScanCurve& c, double from, double to, double null_ratio)
{
    validate(c);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c.xs.size(); ++i)
    {
        if (c.xs[i] >= from && c.xs[i] <= to)
            idx.push_back(i);
    }
    if (idx.empty())
        return {};

    struct Part
    {
        std::size_t begin;  // position in idx
        std::size_t end;    // inclusive
        std::size_t crest;
    };
    std::vector<Part> parts;
    std::size_t begin = 0;
    for (std::size_t p = 1; p + 1 < idx.size(); ++p)
    {
        const double y = c.ys[idx[p]];
        if (y < c.ys[idx[p - 1]] && y <= c.ys[idx[p + 1]])
        {
            parts.push_back({begin, p, begin});
            begin = p;
        }
    }
    parts.push_back({begin, idx.size() - 1, begin});
    auto crest_of = [&](Part& part) {
        part.crest = part.begin;
        for (std::size_t p = part.begin; p <= part.end; ++p)
        {
            if (c.ys[idx[p]] > c.ys[idx[part.crest]])
                part.crest = p;
        }
    };
    for (Part& part : parts)
        crest_of(part);

    // Merge across the shallowest non-null boundary until every boundary is a null.
    for (;;)
    {
        std::size_t worst = parts.size();
        double worst_ratio = null_ratio;
        for (std::size_t b = 0; b + 1 < parts.size(); ++b)
        {
            const double dip = c.ys[idx[parts[b].end]];
            const double crest = std::min(c.ys[idx[parts[b].crest]], c.ys[idx[parts[b + 1].crest]]);
            const double ratio = crest > 0.0 ? dip / crest : 1.0;
            if (ratio >= worst_ratio)
            {
                worst_ratio = ratio;
                worst = b;
            }
        }
        if (worst == parts.size())
            break;
        parts[worst].end = parts[worst + 1].end;
        crest_of(parts[worst]);
        parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(worst + 1));
    }

    std::vector<Lobe> lobes;
    for (const Part& part : parts)
    {
        Lobe l;
        l.crest_x = c.xs[idx[part.crest]];
        l.crest_y = c.ys[idx[part.crest]];
        l.start_x = c.xs[idx[part.begin]];
        l.clipped = part.crest == 0 || part.crest == idx.size() - 1;
        lobes.push_back(l);
    }
    return lobes;
}

} // namespace zapsim
