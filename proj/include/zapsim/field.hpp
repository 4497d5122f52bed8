#ifndef ZAPSIM_FIELD_HPP
#define ZAPSIM_FIELD_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace zapsim
{

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform sampling grid shared by a time-domain envelope and its spectrum.
///
/// Time samples are t_j = (j - n/2) dt and frequency samples are detunings
/// from the optical carrier, nu_k = (k - n/2) df with df = 1/(n dt), so both
/// axes are centred on zero and cover [-n/2, n/2) steps.
class Grid
{
public:
    std::size_t size() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double df() const noexcept { return 1.0 / (static_cast<double>(n_) * dt_); }
    double window() const noexcept { return static_cast<double>(n_) * dt_; }
    double nyquist() const noexcept { return 0.5 / dt_; }
    std::size_t zero_index() const noexcept { return n_ / 2; }

    double time(std::size_t j) const noexcept
    {
        return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * dt_;
    }
    double detuning(std::size_t k) const noexcept
    {
        return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * df();
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    friend Grid make_grid(std::size_t n, double dt);
    Grid(std::size_t n, double dt) : n_(n), dt_(dt) {}

    std::size_t n_;
    double dt_;
};

/// Throws ValidationError unless n is a power of two >= 2 and dt > 0.
Grid make_grid(std::size_t n, double dt);

/// Carrier-removed complex envelope E(t) sampled on a Grid.
class TemporalField
{
public:
    TemporalField(Grid grid, ComplexVector amp);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const Complex> amp() const noexcept { return amp_; }
    const Complex& operator[](std::size_t j) const { return amp_[j]; }
    std::size_t size() const noexcept { return amp_.size(); }

private:
    Grid grid_;
    ComplexVector amp_;
};

/// Spectrum E(nu) indexed by detuning from the carrier. Sample k holds the
/// continuous-Fourier-transform value at nu_k, so pulse energy is df * sum|E|^2.
class SpectralField
{
public:
    SpectralField(Grid grid, ComplexVector amp);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const Complex> amp() const noexcept { return amp_; }
    const Complex& operator[](std::size_t k) const { return amp_[k]; }
    std::size_t size() const noexcept { return amp_.size(); }

private:
    Grid grid_;
    ComplexVector amp_;
};

// E(nu) = dt * sum_j E(t_j) exp(+2 pi i nu t_j). Fields oscillate as
// exp(-i omega t), which keeps the medium response causal.
SpectralField to_spectrum(const TemporalField& f);

// Exact inverse of to_spectrum.
TemporalField to_time(const SpectralField& spectrum);

/// Transform-limited Gaussian with unit peak amplitude. fwhm is the intensity
/// FWHM; detuning shifts the spectral peak away from the carrier.
TemporalField gaussian_pulse(const Grid& grid, double fwhm, double center, double detuning);

/// dt * sum_j E(t_j). Identical to the zero-detuning spectral sample.
Complex pulse_area(const TemporalField& f);

double pulse_energy(const TemporalField& f);
double pulse_energy(const SpectralField& spectrum);

TemporalField scaled(const TemporalField& f, Complex factor);

} // namespace zapsim

#endif // ZAPSIM_FIELD_HPP
