#ifndef ZAPSIM_MEDIUM_HPP
#define ZAPSIM_MEDIUM_HPP

#include "zapsim/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zapsim
{

/// Two-level resonant medium with a single effective Lorentzian line.
struct MediumParams
{
    double depth = 0.0;     // optical depth alpha0 * l (field attenuation e^-depth on resonance)
    double t2 = 270e-12;    // dephasing time [s]; Doppler broadening folded in
    double detune_a = 0.0;  // resonance offset from the pulse carrier [Hz]
};

/// Throws ValidationError unless depth >= 0, t2 > 0 and all values finite.
void validate(const MediumParams& m);

/// Complex samples H(nu) on the detuning axis of a Grid.
struct SpectralFilter
{
    Grid grid;
    ComplexVector values;
};

// H(nu) = exp[-depth / (1 - 2 pi i (nu - detune_a) t2)]
SpectralFilter transfer_function(const Grid& grid, const MediumParams& m);

SpectralField propagate(const SpectralField& input, const MediumParams& m);
TemporalField propagate(const TemporalField& input, const MediumParams& m);

/// energy(propagate(F)) / energy(F), evaluated without materialising the output.
double energy_transmission(const SpectralField& input, const MediumParams& m);

/// Time-domain response to a unit-area impulse at t = 0 on the grid's time axis.
///
/// The first two terms of exp(-depth u) = 1 - depth u + depth^2 u^2 / 2 - ...
/// with u = 1/(1 - i w t2) carry the discontinuity and the kink of the
/// response at t = 0. They are sampled from their exact transforms (the jump
/// takes its midpoint value) and only the smooth remainder goes through the
/// inverse DFT, which removes the Gibbs ringing a direct transform leaves at
/// t < 0. The delta term appears as 1/dt in the t = 0 sample.
TemporalField impulse_response(const Grid& grid, const MediumParams& m);

/// Closed form of the non-delta part of the impulse response at t > 0:
/// -exp(-t/t2) sqrt(depth/(t2 t)) J1(2 sqrt(depth t/t2)) exp(-2 pi i detune_a t).
Complex impulse_response_tail(const MediumParams& m, double t);

struct Preset
{
    int index = 0;                    // 1-based
    std::string label;
    std::optional<double> temperature_c;
    MediumParams medium;
};

/// The five cell conditions of the classical cross-correlation measurements:
/// depths 70, 180, 440, 1000, 2200 with t2 stepping linearly from 280 ps to
/// 260 ps. No cell temperatures are attached because the depth-to-temperature
/// pairing is not known.
std::vector<Preset> temperature_presets();

/// Throws ValidationError for an index outside 1..5.
Preset preset(int index);

/// Grid adequacy warnings for propagating `input` through `m`: fewer than
/// 8 frequency samples across the line FWHM, or an output envelope whose
/// window-edge magnitude exceeds 1e-6 of its peak.
std::vector<std::string> grid_diagnostics(const TemporalField& input, const MediumParams& m);

} // namespace zapsim

#endif // ZAPSIM_MEDIUM_HPP
