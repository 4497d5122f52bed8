#include "zapsim/zapsim.h"

#include "zapsim/config.hpp"
#include "zapsim/error.hpp"
#include "zapsim/field.hpp"
#include "zapsim/medium.hpp"
#include "zapsim/modes.hpp"
#include "zapsim/quantum.hpp"
#include "zapsim/scenario.hpp"
#include "zapsim/shaper.hpp"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>

struct zap_config
{
    zapsim::ScenarioConfig cfg;
};

struct zap_field
{
    zapsim::TemporalField field;
};

namespace
{

thread_local std::string g_last_error;

zap_status fail(zap_status status, const char* what)
{
    g_last_error = what;
    return status;
}

template <class Fn>
zap_status guarded(Fn&& fn)
{
    try
    {
        fn();
        return ZAP_OK;
    }
    catch (const zapsim::ValidationError& e)
    {
        return fail(ZAP_ERR_VALIDATION, e.what());
    }
    catch (const zapsim::IoError& e)
    {
        return fail(ZAP_ERR_IO, e.what());
    }
    catch (const std::bad_alloc&)
    {
        return fail(ZAP_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception& e)
    {
        return fail(ZAP_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(ZAP_ERR_INTERNAL, "unknown error");
    }
}

template <class... Ptrs>
void require_non_null(const Ptrs*... ptrs)
{
    if (((ptrs == nullptr) || ...))
        throw zapsim::ValidationError("null pointer argument");
}

void copy_out(const std::string& text, char* buf, std::size_t cap)
{
    if (buf == nullptr || cap == 0)
        return;
    const std::size_t len = std::min(text.size(), cap - 1);
    std::memcpy(buf, text.data(), len);
    buf[len] = '\0';
}

zapsim::MediumParams to_medium(const zap_medium* m)
{
    zapsim::MediumParams p{m->depth, m->t2, m->detune_hz};
    zapsim::validate(p);
    return p;
}

zapsim::ShaperConfig to_shaper(const zap_shaper* s)
{
    zapsim::ShaperConfig c;
    c.resolution_fwhm = s->resolution_m;
    c.center_wavelength = s->center_m;
    c.span = s->span_m;
    if (s->pixel_m > 0.0)
        c.pixel_width = s->pixel_m;
    zapsim::validate(c);
    return c;
}

void check_eta(double eta)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw zapsim::ValidationError("eta must lie in [0, 1]");
}

} // namespace

extern "C" {

const char* zap_version(void) { return "0.1.0"; }

const char* zap_last_error(void) { return g_last_error.c_str(); }

zap_status zap_config_create(zap_config** out)
{
    return guarded([&] {
        require_non_null(out);
        *out = new zap_config{};
    });
}

zap_status zap_config_load(const char* path, zap_config** out)
{
    return guarded([&] {
        require_non_null(path, out);
        *out = new zap_config{zapsim::load_config(path)};
    });
}

void zap_config_destroy(zap_config* cfg) { delete cfg; }

zap_status zap_config_set(zap_config* cfg, const char* key, const char* value)
{
    return guarded([&] {
        require_non_null(cfg, key, value);
        cfg->cfg.set(key, value);
    });
}

zap_status zap_config_get(const zap_config* cfg, const char* key, char* buf, size_t cap)
{
    return guarded([&] {
        require_non_null(cfg, key, buf);
        copy_out(cfg->cfg.get(key), buf, cap);
    });
}

zap_status zap_config_validate(const zap_config* cfg)
{
    return guarded([&] {
        require_non_null(cfg);
        zapsim::resolve(cfg->cfg);
    });
}

zap_status zap_run(const zap_config* cfg, const char* verb, char* report, size_t cap)
{
    return guarded([&] {
        require_non_null(cfg, verb);
        const zapsim::RunReport r = zapsim::run_verb(cfg->cfg, verb);
        std::string text;
        for (const auto& f : r.files)
            text += "wrote " + f.string() + "\n";
        for (const auto& w : r.warnings)
            text += "warning: " + w + "\n";
        for (const auto& s : r.summary)
            text += s + "\n";
        copy_out(text, report, cap);
    });
}

zap_status zap_field_gaussian(size_t n, double dt, double fwhm, double center, double detuning_hz, zap_field** out)
{
    return guarded([&] {
        require_non_null(out);
        const zapsim::Grid g = zapsim::make_grid(n, dt);
        *out = new zap_field{zapsim::gaussian_pulse(g, fwhm, center, detuning_hz)};
    });
}

zap_status zap_field_from_samples(size_t n, double dt, const double* re, const double* im, zap_field** out)
{
    return guarded([&] {
        require_non_null(re, im, out);
        const zapsim::Grid g = zapsim::make_grid(n, dt);
        zapsim::ComplexVector amp(n);
        for (std::size_t j = 0; j < n; ++j)
            amp[j] = {re[j], im[j]};
        *out = new zap_field{zapsim::TemporalField(g, std::move(amp))};
    });
}

void zap_field_destroy(zap_field* f) { delete f; }

size_t zap_field_size(const zap_field* f) { return f == nullptr ? 0 : f->field.size(); }

double zap_field_dt(const zap_field* f) { return f == nullptr ? 0.0 : f->field.grid().dt(); }

zap_status zap_field_samples(const zap_field* f, double* re, double* im, size_t cap)
{
    return guarded([&] {
        require_non_null(f, re, im);
        if (cap < f->field.size())
            throw zapsim::ValidationError("output buffers are smaller than the field");
        for (std::size_t j = 0; j < f->field.size(); ++j)
        {
            re[j] = f->field[j].real();
            im[j] = f->field[j].imag();
        }
    });
}

zap_status zap_field_area(const zap_field* f, double* re, double* im)
{
    return guarded([&] {
        require_non_null(f, re, im);
        const zapsim::Complex a = zapsim::pulse_area(f->field);
        *re = a.real();
        *im = a.imag();
    });
}

zap_status zap_field_energy(const zap_field* f, double* out)
{
    return guarded([&] {
        require_non_null(f, out);
        *out = zapsim::pulse_energy(f->field);
    });
}

zap_status zap_preset(int index, zap_medium* out)
{
    return guarded([&] {
        require_non_null(out);
        const zapsim::Preset p = zapsim::preset(index);
        *out = {p.medium.depth, p.medium.t2, p.medium.detune_a};
    });
}

zap_status zap_propagate(const zap_field* f, const zap_medium* m, zap_field** out)
{
    return guarded([&] {
        require_non_null(f, m, out);
        *out = new zap_field{zapsim::propagate(f->field, to_medium(m))};
    });
}

zap_status zap_energy_transmission(const zap_field* f, const zap_medium* m, double* out)
{
    return guarded([&] {
        require_non_null(f, m, out);
        *out = zapsim::energy_transmission(zapsim::to_spectrum(f->field), to_medium(m));
    });
}

zap_status zap_visibility_curve(const zap_field* sig, const zap_field* lo, const double* delays, size_t count,
                                double* out)
{
    return guarded([&] {
        require_non_null(sig, lo, delays, out);
        const zapsim::ScanCurve c
            = zapsim::visibility_curve(sig->field, lo->field, std::span<const double>(delays, count));
        std::copy(c.ys.begin(), c.ys.end(), out);
    });
}

zap_status zap_eta_curve(const zap_field* input, const zap_medium* m, const zap_field* lo, double eta_base,
                         const double* delays, size_t count, double* out)
{
    return guarded([&] {
        require_non_null(input, m, lo, delays, out);
        const zapsim::ScanCurve c = zapsim::eta_curve(input->field, to_medium(m), lo->field, eta_base,
                                                      std::span<const double>(delays, count));
        std::copy(c.ys.begin(), c.ys.end(), out);
    });
}

zap_status zap_max_unshaped_eta(const zap_field* input, const zap_medium* m, double eta_base, double* delay,
                                double* eta)
{
    return guarded([&] {
        require_non_null(input, m, delay, eta);
        const zapsim::CurvePeak p = zapsim::unshaped_peak(input->field, to_medium(m), eta_base);
        *delay = p.x;
        *eta = p.y;
    });
}

zap_status zap_max_shaped_eta(const zap_field* input, const zap_medium* m, const zap_shaper* shaper,
                              double eta_base, double* eta)
{
    return guarded([&] {
        require_non_null(input, m, shaper, eta);
        *eta = zapsim::max_shaped_eta(input->field, to_medium(m), to_shaper(shaper), eta_base);
    });
}

zap_status zap_quadrature_pdf(double eta, double x, double* out)
{
    return guarded([&] {
        require_non_null(out);
        *out = zapsim::quadrature_pdf(zapsim::HeraldedState(eta), x);
    });
}

zap_status zap_wigner(double eta, double x, double p, double* out)
{
    return guarded([&] {
        require_non_null(out);
        *out = zapsim::wigner(zapsim::HeraldedState(eta), x, p);
    });
}

zap_status zap_is_nonclassical(double eta, int* out)
{
    return guarded([&] {
        require_non_null(out);
        check_eta(eta);
        *out = zapsim::is_nonclassical(zapsim::HeraldedState(eta)) ? 1 : 0;
    });
}

zap_status zap_sample_quadratures(double eta, size_t n, uint64_t seed, double* out)
{
    return guarded([&] {
        require_non_null(out);
        const zapsim::QuadratureSample q = zapsim::sample_quadratures(zapsim::HeraldedState(eta), n, seed);
        std::copy(q.values.begin(), q.values.end(), out);
    });
}

zap_status zap_estimate_eta(const double* values, size_t n, double* eta, double* standard_error, int* clamped)
{
    return guarded([&] {
        require_non_null(values, eta, standard_error, clamped);
        const zapsim::EtaEstimate e = zapsim::estimate_eta(std::span<const double>(values, n));
        *eta = e.eta;
        *standard_error = e.standard_error;
        *clamped = e.clamped ? 1 : 0;
    });
}

} // extern "C"
