#include "zapsim/shaper.hpp"

#include "zapsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace zapsim
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);

void check_eta_base(double eta_base)
{
    if (!(eta_base >= 0.0 && eta_base <= 1.0))
        throw ValidationError("eta_base must lie in [0, 1]");
}

// Bracket width at which delay refinement stops [s].
constexpr double kDelayTolerance = 1e-20;

// Golden-section maximisation of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, double& best_value)
{
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200; ++iter)
    {
        const double width = b - a;
        const double ulp = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
        if (!(width > std::max(kDelayTolerance, ulp)) || c <= a || d >= b || !(c < d))
            break;
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    if (fc >= fd)
    {
        best_value = fc;
        return c;
    }
    best_value = fd;
    return d;
}

struct Target
{
    SpectralField spectrum;  // unit-energy propagated mode
    double transmission;
};

Target propagated_target(const TemporalField& input, const MediumParams& m)
{
    const SpectralField in = to_spectrum(normalize(input));
    const double te = energy_transmission(in, m);
    const SpectralField out = propagate(in, m);
    const double norm = std::sqrt(pulse_energy(out));
    ComplexVector unit(out.amp().begin(), out.amp().end());
    for (Complex& z : unit)
        z /= norm;
    return {SpectralField(in.grid(), std::move(unit)), te};
}

// Aperture clipping followed by optional pixel averaging.
ComplexVector mask_limits(const Grid& grid, std::span<const Complex> spectrum, const ShaperConfig& cfg)
{
    ComplexVector out(spectrum.begin(), spectrum.end());
    const double half_span = 0.5 * wavelength_interval_to_hz(cfg.span, cfg.center_wavelength);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        if (std::abs(grid.detuning(k)) > half_span)
            out[k] = {0.0, 0.0};
    }
    if (cfg.pixel_width)
    {
        const double pixel = wavelength_interval_to_hz(*cfg.pixel_width, cfg.center_wavelength);
        std::size_t begin = 0;
        while (begin < out.size())
        {
            const double q = std::floor(grid.detuning(begin) / pixel + 0.5);
            std::size_t end = begin + 1;
            while (end < out.size() && std::floor(grid.detuning(end) / pixel + 0.5) == q)
                ++end;
            Complex mean{0.0, 0.0};
            for (std::size_t k = begin; k < end; ++k)
                mean += out[k];
            mean /= static_cast<double>(end - begin);
            for (std::size_t k = begin; k < end; ++k)
                out[k] = mean;
            begin = end;
        }
    }
    return out;
}

bool is_ideal(const ShaperConfig& cfg) { return cfg.resolution_fwhm == 0.0; }

bool aperture_active(const Grid& grid, const ShaperConfig& cfg)
{
    return 0.5 * wavelength_interval_to_hz(cfg.span, cfg.center_wavelength) < grid.nyquist();
}

} // namespace

void validate(const ShaperConfig& cfg)
{
    if (!(cfg.resolution_fwhm >= 0.0) || !std::isfinite(cfg.resolution_fwhm))
        throw ValidationError("shaper resolution must be finite and >= 0");
    if (!(cfg.center_wavelength > 0.0) || !std::isfinite(cfg.center_wavelength))
        throw ValidationError("shaper centre wavelength must be positive");
    if (!(cfg.span > cfg.resolution_fwhm) || !std::isfinite(cfg.span))
        throw ValidationError("shaper span must exceed its resolution");
    if (cfg.pixel_width && (!(*cfg.pixel_width > 0.0) || !std::isfinite(*cfg.pixel_width)))
        throw ValidationError("shaper pixel width must be positive");
}

double wavelength_interval_to_hz(double dlambda, double lambda)
{
    return kSpeedOfLight * dlambda / (lambda * lambda);
}

SpectralFilter resolution_kernel(const Grid& grid, const ShaperConfig& cfg)
{
    validate(cfg);
    SpectralFilter k{grid, ComplexVector(grid.size())};
    const double fwhm = wavelength_interval_to_hz(cfg.resolution_fwhm, cfg.center_wavelength);
    if (fwhm == 0.0)
    {
        k.values[grid.zero_index()] = 1.0 / grid.df();
        return k;
    }
    if (fwhm < 2.0 * grid.df())
        throw ValidationError("shaper resolution is finer than two frequency samples");

    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    double area = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double nu = grid.detuning(i);
        const double v = std::exp(-0.5 * nu * nu / (sigma * sigma));
        k.values[i] = v;
        area += v;
    }
    area *= grid.df();
    for (Complex& v : k.values)
        v /= area;
    return k;
}

SpectralField smooth(const SpectralField& spectrum, const SpectralFilter& kernel)
{
    if (!(spectrum.grid() == kernel.grid))
        throw ValidationError("kernel and spectrum live on different grids");
    const TemporalField window = to_time(SpectralField(kernel.grid, kernel.values));
    const TemporalField f = to_time(spectrum);
    ComplexVector prod(f.amp().begin(), f.amp().end());
    for (std::size_t j = 0; j < prod.size(); ++j)
        prod[j] *= window[j];
    return to_spectrum(TemporalField(f.grid(), std::move(prod)));
}

TemporalField achievable_lo(const TemporalField& target, const ShaperConfig& cfg)
{
    validate(cfg);
    if (std::abs(pulse_energy(target) - 1.0) > 1e-9)
        throw ValidationError("shaper target must be a normalised mode");
    const Grid& g = target.grid();
    const SpectralFilter kernel = resolution_kernel(g, cfg);
    const SpectralField spec = to_spectrum(target);
    SpectralField limited(g, mask_limits(g, spec.amp(), cfg));
    if (!is_ideal(cfg))
        limited = smooth(limited, kernel);
    const double e = pulse_energy(limited);
    if (!(e > 0.0))
        throw ValidationError("shaper passes no part of the target spectrum");
    return normalize(to_time(limited));
}

CurvePeak unshaped_peak(const TemporalField& input, const MediumParams& m, double eta_base)
{
    check_eta_base(eta_base);
    const Grid& g = input.grid();
    const Target target = propagated_target(input, m);
    const SpectralField lo = to_spectrum(normalize(input));

    // to_time(conj(L) T) sampled at t_j is the cross-correlation at delay t_j.
    ComplexVector prod(g.size());
    for (std::size_t k = 0; k < prod.size(); ++k)
        prod[k] = std::conj(lo[k]) * target.spectrum[k];
    const TemporalField xc_grid = to_time(SpectralField(g, std::move(prod)));
    const double limit = 0.25 * g.window();
    std::size_t best = g.size();
    for (std::size_t j = 0; j < g.size(); ++j)
    {
        if (std::abs(g.time(j)) > limit)
            continue;
        if (best == g.size() || std::norm(xc_grid[j]) > std::norm(xc_grid[best]))
            best = j;
    }

    const CrossCorrelator xc(lo, target.spectrum);
    const double tau0 = g.time(best);
    double value = std::norm(xc.at(tau0));
    double tau = tau0;
    double refined = 0.0;
    const double t_ref = golden_max([&](double t) { return std::norm(xc.at(t)); },
                                    std::max(tau0 - g.dt(), -limit), std::min(tau0 + g.dt(), limit),
                                    refined);
    if (refined > value)
    {
        value = refined;
        tau = t_ref;
    }
    const double scale = eta_base * target.transmission;
    return {tau, std::min(scale * value, scale)};
}

double max_unshaped_eta(const TemporalField& input, const MediumParams& m, double eta_base)
{
    return unshaped_peak(input, m, eta_base).y;
}

ShapedResult optimize_shaped_eta(const TemporalField& input, const MediumParams& m,
                                 const ShaperConfig& cfg, double eta_base)
{
    check_eta_base(eta_base);
    validate(cfg);
    const Grid& g = input.grid();
    const Target target = propagated_target(input, m);
    const SpectralFilter kernel = resolution_kernel(g, cfg);
    const TemporalField window = to_time(SpectralField(g, kernel.values));
    const bool spectral_limits = aperture_active(g, cfg) || cfg.pixel_width.has_value();

    // |<A_s|T_s>|^2 for the target delayed by s, where A_s is the shaped LO
    // before normalisation; T_s has unit energy.
    auto objective = [&](double s) {
        ComplexVector ts(g.size());
        for (std::size_t k = 0; k < ts.size(); ++k)
            ts[k] = target.spectrum[k] * std::polar(1.0, kTwoPi * g.detuning(k) * s);
        const TemporalField t_time = to_time(SpectralField(g, ts));
        const TemporalField limited = spectral_limits
                                          ? to_time(SpectralField(g, mask_limits(g, ts, cfg)))
                                          : t_time;
        Complex dot{0.0, 0.0};
        double norm_a = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
        {
            const Complex a = is_ideal(cfg) ? limited[j] : limited[j] * window[j];
            dot += std::conj(a) * t_time[j];
            norm_a += std::norm(a);
        }
        if (!(norm_a > 0.0))
            return 0.0;
        return std::min(1.0, std::norm(dot) / norm_a * g.dt());
    };

    ShapedResult r;
    r.transmission = target.transmission;
    if (is_ideal(cfg) && !cfg.pixel_width)
    {
        r.shaped_overlap2 = objective(0.0);
    }
    else
    {
        // Centre the scan on the target's energy centroid; the smoothing acts
        // as a time window of FWHM 4 ln2 / (pi dnu) around t = 0.
        const TemporalField t_time = to_time(target.spectrum);
        double centroid = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            centroid += std::norm(t_time[j]) * g.time(j);
        centroid *= g.dt();

        const double fwhm_hz = is_ideal(cfg) ? 0.0 : wavelength_interval_to_hz(cfg.resolution_fwhm, cfg.center_wavelength);
        double half_range = 4.0 * std::numbers::ln2 / (std::numbers::pi * std::max(fwhm_hz, 1.0 / g.window()));
        half_range = std::min(2.0 * half_range, 0.25 * g.window());
        constexpr std::size_t kCoarse = 25;
        const std::vector<double> shifts = linspace(-centroid - half_range, -centroid + half_range, kCoarse);
        std::vector<double> values(kCoarse);
        for (std::size_t i = 0; i < kCoarse; ++i)
            values[i] = objective(shifts[i]);
        const std::size_t best = static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin());
        const double lo = shifts[best == 0 ? 0 : best - 1];
        const double hi = shifts[best + 1 == kCoarse ? best : best + 1];
        double refined = 0.0;
        const double s = golden_max(objective, lo, hi, refined);
        if (refined >= values[best])
        {
            r.shaped_overlap2 = refined;
            r.delay = s;
        }
        else
        {
            r.shaped_overlap2 = values[best];
            r.delay = shifts[best];
        }
    }

    const double scale = eta_base * target.transmission;
    const double shaped = scale * r.shaped_overlap2;
    const double unshaped = unshaped_peak(input, m, eta_base).y;
    r.fallback = unshaped > shaped;
    r.eta = std::max(shaped, unshaped);
    return r;
}

double max_shaped_eta(const TemporalField& input, const MediumParams& m, const ShaperConfig& cfg,
                      double eta_base)
{
    return optimize_shaped_eta(input, m, cfg, eta_base).eta;
}

} // namespace zapsim
