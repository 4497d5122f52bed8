#include "zapsim/field.hpp"

#include "zapsim/error.hpp"
#include "zapsim/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace zapsim
{
namespace
{

void check_samples(const Grid& grid, const ComplexVector& amp, const char* what)
{
    if (amp.size() != grid.size())
        throw ValidationError(std::string(what) + ": sample count " + std::to_string(amp.size())
                              + " does not match grid size " + std::to_string(grid.size()));
    for (const Complex& z : amp)
    {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError(std::string(what) + ": non-finite sample");
    }
}

// Centring both axes turns the DFT kernel exp(2 pi i nu_k t_j) into
// (-1)^(j + k) * i^n * exp(2 pi i jk/n); i^n is real for every power of two.
double centring_sign(std::size_t n) { return n == 2 ? -1.0 : 1.0; }

void alternate_signs(ComplexVector& v)
{
    for (std::size_t i = 1; i < v.size(); i += 2)
        v[i] = -v[i];
}

} // namespace

Grid make_grid(std::size_t n, double dt)
{
    if (n < 2 || !std::has_single_bit(n))
        throw ValidationError("grid size must be a power of two >= 2, got " + std::to_string(n));
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("grid time step must be positive");
    return Grid(n, dt);
}

TemporalField::TemporalField(Grid grid, ComplexVector amp) : grid_(grid), amp_(std::move(amp))
{
    check_samples(grid_, amp_, "temporal field");
}

SpectralField::SpectralField(Grid grid, ComplexVector amp) : grid_(grid), amp_(std::move(amp))
{
    check_samples(grid_, amp_, "spectral field");
}

SpectralField to_spectrum(const TemporalField& f)
{
    const Grid& g = f.grid();
    ComplexVector buf(f.amp().begin(), f.amp().end());
    alternate_signs(buf);
    fft::transform(buf, fft::Sign::Positive);
    alternate_signs(buf);
    const double scale = g.dt() * centring_sign(g.size());
    for (Complex& z : buf)
        z *= scale;
    return SpectralField(g, std::move(buf));
}

TemporalField to_time(const SpectralField& spectrum)
{
    const Grid& g = spectrum.grid();
    ComplexVector buf(spectrum.amp().begin(), spectrum.amp().end());
    alternate_signs(buf);
    fft::transform(buf, fft::Sign::Negative);
    alternate_signs(buf);
    const double scale = g.df() * centring_sign(g.size());
    for (Complex& z : buf)
        z *= scale;
    return TemporalField(g, std::move(buf));
}

TemporalField gaussian_pulse(const Grid& grid, double fwhm, double center, double detuning)
{
    if (!(fwhm > 0.0) || fwhm >= grid.window())
        throw ValidationError("pulse FWHM must lie in (0, grid window)");
    if (!(std::abs(detuning) < grid.nyquist()))
        throw ValidationError("pulse detuning must be below the grid Nyquist frequency");
    if (!std::isfinite(center))
        throw ValidationError("pulse centre must be finite");

    // Intensity exp(-4 ln2 t^2/fwhm^2) has FWHM fwhm, so the amplitude carries half of it.
    const double a = 2.0 * std::numbers::ln2 / (fwhm * fwhm);
    const double w = 2.0 * std::numbers::pi * detuning;
    ComplexVector amp(grid.size());
    for (std::size_t j = 0; j < amp.size(); ++j)
    {
        const double s = grid.time(j) - center;
        amp[j] = std::exp(-a * s * s) * std::polar(1.0, -w * s);
    }
    return TemporalField(grid, std::move(amp));
}

Complex pulse_area(const TemporalField& f)
{
    // Extended accumulator: deep absorption leaves a small area from large
    // cancelling lobes.
    long double re = 0.0L;
    long double im = 0.0L;
    for (const Complex& z : f.amp())
    {
        re += z.real();
        im += z.imag();
    }
    return Complex{static_cast<double>(re), static_cast<double>(im)} * f.grid().dt();
}

double pulse_energy(const TemporalField& f)
{
    long double sum = 0.0L;
    for (const Complex& z : f.amp())
        sum += std::norm(z);
    return static_cast<double>(sum) * f.grid().dt();
}

double pulse_energy(const SpectralField& spectrum)
{
    long double sum = 0.0L;
    for (const Complex& z : spectrum.amp())
        sum += std::norm(z);
    return static_cast<double>(sum) * spectrum.grid().df();
}

TemporalField scaled(const TemporalField& f, Complex factor)
{
    ComplexVector amp(f.amp().begin(), f.amp().end());
    for (Complex& z : amp)
        z *= factor;
    return TemporalField(f.grid(), std::move(amp));
}

} // namespace zapsim
