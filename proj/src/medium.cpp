#include "zapsim/medium.hpp"

#include "zapsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zapsim
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid_span(const Grid& grid, const MediumParams& m)
{
    if (!(std::abs(m.detune_a) < grid.nyquist()))
        throw ValidationError("resonance detuning lies outside the grid frequency span");
}

Complex lorentz_u(const MediumParams& m, double nu)
{
    return 1.0 / Complex(1.0, -kTwoPi * (nu - m.detune_a) * m.t2);
}

} // namespace

void validate(const MediumParams& m)
{
    if (!(m.depth >= 0.0) || !std::isfinite(m.depth))
        throw ValidationError("medium depth must be finite and >= 0");
    if (!(m.t2 > 0.0) || !std::isfinite(m.t2))
        throw ValidationError("medium t2 must be finite and > 0");
    if (!std::isfinite(m.detune_a))
        throw ValidationError("medium detuning must be finite");
}

SpectralFilter transfer_function(const Grid& grid, const MediumParams& m)
{
    validate(m);
    check_grid_span(grid, m);
    SpectralFilter h{grid, ComplexVector(grid.size())};
    for (std::size_t k = 0; k < grid.size(); ++k)
        h.values[k] = std::exp(-m.depth * lorentz_u(m, grid.detuning(k)));
    return h;
}

SpectralField propagate(const SpectralField& input, const MediumParams& m)
{
    const SpectralFilter h = transfer_function(input.grid(), m);
    ComplexVector out(input.amp().begin(), input.amp().end());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] *= h.values[k];
    return SpectralField(input.grid(), std::move(out));
}

TemporalField propagate(const TemporalField& input, const MediumParams& m)
{
    return to_time(propagate(to_spectrum(input), m));
}

double energy_transmission(const SpectralField& input, const MediumParams& m)
{
    const SpectralFilter h = transfer_function(input.grid(), m);
    double in = 0.0;
    double out = 0.0;
    for (std::size_t k = 0; k < input.size(); ++k)
    {
        const double e = std::norm(input[k]);
        in += e;
        out += e * std::norm(h.values[k]);
    }
    if (!(in > 0.0))
        throw ValidationError("energy transmission of a zero-energy field is undefined");
    return std::clamp(out / in, 0.0, 1.0);
}

TemporalField impulse_response(const Grid& grid, const MediumParams& m)
{
    validate(m);
    check_grid_span(grid, m);
    const double a = m.depth;
    const std::size_t n = grid.size();

    // Smooth remainder R = H - sum_{k<=3} (-a u)^k / k!, decaying as |nu|^-4.
    ComplexVector rem(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const Complex au = a * lorentz_u(m, grid.detuning(k));
        rem[k] = std::exp(-au) - 1.0 + au - 0.5 * au * au + au * au * au / 6.0;
    }
    const TemporalField smooth = to_time(SpectralField(grid, std::move(rem)));
    ComplexVector h(smooth.amp().begin(), smooth.amp().end());

    // u^k <-> t^(k-1) exp(-t/t2) / ((k-1)! t2^k) for t >= 0. The DFT sees
    // these periodised over the window: sum over m >= 0 of f(tp + m W) with
    // ratio q per period, summed in closed form.
    const double window = grid.window();
    const Complex q = std::polar(std::exp(-window / m.t2), -kTwoPi * m.detune_a * window);
    const Complex s0 = 1.0 / (1.0 - q);
    const Complex s1 = q * s0 * s0;
    const Complex s2 = q * (1.0 + q) * s0 * s0 * s0;
    const double c1 = -a / m.t2;
    const double c2 = 0.5 * a * a / (m.t2 * m.t2);
    const double c3 = -a * a * a / (12.0 * m.t2 * m.t2 * m.t2);
    for (std::size_t j = 0; j < n; ++j)
    {
        const double t = grid.time(j);
        const double tp = t >= 0.0 ? t : t + window;
        const Complex carrier = std::polar(std::exp(-tp / m.t2), -kTwoPi * m.detune_a * tp);
        // The zeroth-order term jumps at t = 0; the sample takes the midpoint.
        const Complex p0 = j == grid.zero_index() ? s0 - 0.5 : s0;
        const Complex p1 = tp * s0 + window * s1;
        const Complex p2 = tp * tp * s0 + 2.0 * tp * window * s1 + window * window * s2;
        h[j] += carrier * (c1 * p0 + c2 * p1 + c3 * p2);
    }
    h[grid.zero_index()] += 1.0 / grid.dt();
    return TemporalField(grid, std::move(h));
}

Complex impulse_response_tail(const MediumParams& m, double t)
{
    if (t <= 0.0)
        return {0.0, 0.0};
    const Complex phase = std::polar(1.0, -kTwoPi * m.detune_a * t);
    const double y = m.depth * t / m.t2;
    if (y == 0.0)
        return {0.0, 0.0};
    const double mag = std::exp(-t / m.t2) * std::sqrt(m.depth / (m.t2 * t))
                       * std::cyl_bessel_j(1.0, 2.0 * std::sqrt(y));
    return -mag * phase;
}

std::vector<Preset> temperature_presets()
{
    constexpr double depths[] = {70.0, 180.0, 440.0, 1000.0, 2200.0};
    constexpr double t2_first = 280e-12;
    constexpr double t2_last = 260e-12;
    std::vector<Preset> out;
    for (int i = 0; i < 5; ++i)
    {
        Preset p;
        p.index = i + 1;
        p.label = "preset" + std::to_string(i + 1);
        p.medium.depth = depths[i];
        p.medium.t2 = t2_first + (t2_last - t2_first) * i / 4.0;
        out.push_back(p);
    }
    return out;
}

Preset preset(int index)
{
    if (index < 1 || index > 5)
        throw ValidationError("preset index must be in 1..5, got " + std::to_string(index));
    return temperature_presets()[static_cast<std::size_t>(index - 1)];
}

std::vector<std::string> grid_diagnostics(const TemporalField& input, const MediumParams& m)
{
    std::vector<std::string> warnings;
    const Grid& g = input.grid();

    // Lorentzian FWHM in Hz is 2/t2 rad/s divided by 2 pi.
    const double line_fwhm = 1.0 / (std::numbers::pi * m.t2);
    const double samples = line_fwhm / g.df();
    if (samples < 8.0)
    {
        std::ostringstream os;
        os << "only " << samples << " frequency samples span the line FWHM (need >= 8)";
        warnings.push_back(os.str());
    }

    const TemporalField out = propagate(input, m);
    double peak = 0.0;
    for (const Complex& z : out.amp())
        peak = std::max(peak, std::abs(z));
    const double edge = std::max(std::abs(out[0]), std::abs(out[out.size() - 1]));
    if (peak > 0.0 && edge > 1e-6 * peak)
    {
        std::ostringstream os;
        os << "window-edge amplitude is " << edge / peak << " of peak (> 1e-6, wrap-around risk)";
        warnings.push_back(os.str());
    }
    return warnings;
}

} // namespace zapsim
