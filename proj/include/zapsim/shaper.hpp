#ifndef ZAPSIM_SHAPER_HPP
#define ZAPSIM_SHAPER_HPP

#include "zapsim/field.hpp"
#include "zapsim/medium.hpp"
#include "zapsim/modes.hpp"

#include <optional>

namespace zapsim
{

inline constexpr double kSpeedOfLight = 299792458.0;

/// 4-f pixelated pulse shaper. All widths are wavelength intervals [m] at
/// center_wavelength. resolution_fwhm == 0 is an ideal shaper.
struct ShaperConfig
{
    double resolution_fwhm = 0.6e-9;
    double center_wavelength = 780e-9;
    std::optional<double> pixel_width;
    double span = 100e-9;
};

void validate(const ShaperConfig& cfg);

/// c * dlambda / lambda^2.
double wavelength_interval_to_hz(double dlambda, double lambda);

/// Unit-area (df * sum == 1) Gaussian smoothing kernel over detuning, peaked
/// at zero. An ideal shaper yields a single-bin delta.
SpectralFilter resolution_kernel(const Grid& grid, const ShaperConfig& cfg);

/// Circular convolution df * sum_k' K(nu - nu') F(nu'), computed through the
/// convolution theorem as a product with to_time(K) in the time domain.
SpectralField smooth(const SpectralField& spectrum, const SpectralFilter& kernel);

/// Best LO the shaper can imprint for a given target mode: the target spectrum
/// clipped to the aperture, averaged over pixels when they are configured,
/// smoothed by the resolution kernel and renormalised.
TemporalField achievable_lo(const TemporalField& target, const ShaperConfig& cfg);

struct ShapedResult
{
    double eta = 0.0;           // eta_base * T_E * overlap^2, after fallback
    double transmission = 0.0;  // T_E
    double shaped_overlap2 = 0.0;
    double delay = 0.0;         // target delay at the shaped optimum
    bool fallback = false;      // the unmodulated LO did at least as well
};

/// Maximum homodyne efficiency with a shaped LO. Global phase drops out of
/// |overlap|; the target delay relative to the shaper window is scanned
/// coarsely and refined by golden-section search. The unmodulated input
/// mode is always an admissible LO, so the result never falls below
/// max_unshaped_eta.
ShapedResult optimize_shaped_eta(const TemporalField& input, const MediumParams& m,
                                 const ShaperConfig& cfg, double eta_base);

double max_shaped_eta(const TemporalField& input, const MediumParams& m, const ShaperConfig& cfg,
                      double eta_base);

/// Peak of eta(tau) with the unmodulated input mode as LO, over delays within
/// a quarter window: the on-grid maximum from one inverse transform, refined
/// between neighbouring samples.
CurvePeak unshaped_peak(const TemporalField& input, const MediumParams& m, double eta_base);

double max_unshaped_eta(const TemporalField& input, const MediumParams& m, double eta_base);

} // namespace zapsim

#endif // ZAPSIM_SHAPER_HPP
