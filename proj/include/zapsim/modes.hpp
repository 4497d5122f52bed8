#ifndef ZAPSIM_MODES_HPP
#define ZAPSIM_MODES_HPP

#include "zapsim/field.hpp"
#include "zapsim/medium.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zapsim
{

/// Sampled curve: delay [s] or depth/preset versus a real value.
struct ScanCurve
{
    std::vector<double> xs;
    std::vector<double> ys;
    std::string label;
    std::vector<std::pair<std::string, std::string>> meta;
};

/// Throws ValidationError unless xs is strictly increasing, sizes match and
/// every value is finite.
void validate(const ScanCurve& c);

/// Evenly spaced values from first to last inclusive (count >= 2).
std::vector<double> linspace(double first, double last, std::size_t count);

TemporalField normalize(const TemporalField& f);

/// <a|b> = dt * sum conj(a) b for unit-energy modes on the same grid.
Complex overlap(const TemporalField& a, const TemporalField& b);

/// f(t - tau), applied as the spectral phase exp(2 pi i nu tau) so that
/// tau need not be a multiple of dt.
TemporalField delayed(const TemporalField& f, double tau);

/// Evaluates c(tau) = <lo delayed by tau | sig> for arbitrary tau from the
/// two spectra. Spectral bins whose product is below 1e-18 of the largest
/// are skipped.
class CrossCorrelator
{
public:
    CrossCorrelator(const SpectralField& lo, const SpectralField& sig);

    Complex at(double tau) const;
    const Grid& grid() const noexcept { return grid_; }

private:
    Grid grid_;
    std::size_t first_ = 0;
    ComplexVector product_;
};

/// |<lo(tau)|sig>| with both modes normalised first. `sig` is the field that
/// reaches the detector (already propagated). Delays must be strictly
/// increasing and within a quarter window of zero.
ScanCurve visibility_curve(const TemporalField& sig, const TemporalField& lo,
                           std::span<const double> delays);

/// Rescales ys so the largest value is 1.
ScanCurve peak_normalized(const ScanCurve& c);

/// Homodyne efficiency versus LO delay:
///   eta(tau) = eta_base * T_E * |<lo(tau)|f_out>|^2
/// with f_out the normalised propagated mode and T_E its energy transmission.
ScanCurve eta_curve(const TemporalField& input, const MediumParams& m, const TemporalField& lo,
                    double eta_base, std::span<const double> delays);

struct CurvePeak
{
    double x = 0.0;
    double y = 0.0;
};

/// Maximum of ys; ties go to the smallest x.
CurvePeak peak_eta(const ScanCurve& c);

/// A run of the curve bounded by nulls.
struct Lobe
{
    double crest_x = 0.0;
    double crest_y = 0.0;
    double start_x = 0.0;   // x of the null (or range start) opening the lobe
    bool clipped = false;   // crest sits on the end of the searched range
};

/// Splits the part of `c` inside [from, to] into lobes. A local minimum
/// counts as a null when it is below null_ratio times the smaller crest on
/// either side; shallower dips are merged into one lobe.
std::vector<Lobe> find_lobes(const ScanCurve& c, double from, double to, double null_ratio = 0.1);

} // namespace zapsim

#endif // ZAPSIM_MODES_HPP
