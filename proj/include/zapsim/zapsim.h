/*
 * zapsim C API.
 *
 * Every function returns a zap_status; on failure a description is available
 * from zap_last_error() on the calling thread until the next failing call.
 * Handles are opaque and owned by the caller: release them with the matching
 * *_destroy function. Units are SI (seconds, hertz, metres) unless a name
 * says otherwise.
 */
#ifndef ZAPSIM_ZAPSIM_H
#define ZAPSIM_ZAPSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ZAPSIM_BUILDING_LIBRARY)
#    define ZAP_API __declspec(dllexport)
#  else
#    define ZAP_API __declspec(dllimport)
#  endif
#else
#  define ZAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zap_status
{
    ZAP_OK = 0,
    ZAP_ERR_VALIDATION = 1, /* bad argument, precondition or config value */
    ZAP_ERR_IO = 2,         /* file system failure */
    ZAP_ERR_INTERNAL = 3,   /* anything else */
} zap_status;

typedef struct zap_config zap_config;
typedef struct zap_field zap_field;

typedef struct zap_medium
{
    double depth;     /* optical depth alpha0 * l */
    double t2;        /* dephasing time [s] */
    double detune_hz; /* resonance offset from the carrier [Hz] */
} zap_medium;

typedef struct zap_shaper
{
    double resolution_m;  /* wavelength FWHM of the smoothing kernel; 0 = ideal */
    double center_m;      /* centre wavelength */
    double pixel_m;       /* pixel width; 0 = continuous mask */
    double span_m;        /* aperture in wavelength */
} zap_shaper;

ZAP_API const char* zap_version(void);
ZAP_API const char* zap_last_error(void);

/* ---- configuration and scenario runs ---------------------------------- */

ZAP_API zap_status zap_config_create(zap_config** out);
ZAP_API zap_status zap_config_load(const char* path, zap_config** out);
ZAP_API void zap_config_destroy(zap_config* cfg);
ZAP_API zap_status zap_config_set(zap_config* cfg, const char* key, const char* value);
/* Copies the value (NUL-terminated, truncated to cap) into buf. */
ZAP_API zap_status zap_config_get(const zap_config* cfg, const char* key, char* buf, size_t cap);
/* Full cross-field validation. */
ZAP_API zap_status zap_config_validate(const zap_config* cfg);

/* Runs one verb: "propagate", "xcorr", "eta-scan", "depth-scan", "wigner" or
 * "sample". A newline-separated report (written files, warnings, summary
 * lines) is copied into report when it is non-NULL. */
ZAP_API zap_status zap_run(const zap_config* cfg, const char* verb, char* report, size_t cap);

/* ---- fields and the resonant medium ----------------------------------- */

/* Gaussian envelope on an n-point grid with step dt; fwhm is the intensity FWHM. */
ZAP_API zap_status zap_field_gaussian(size_t n, double dt, double fwhm, double center, double detuning_hz,
                                      zap_field** out);
ZAP_API zap_status zap_field_from_samples(size_t n, double dt, const double* re, const double* im,
                                          zap_field** out);
ZAP_API void zap_field_destroy(zap_field* f);
ZAP_API size_t zap_field_size(const zap_field* f);
ZAP_API double zap_field_dt(const zap_field* f);
ZAP_API zap_status zap_field_samples(const zap_field* f, double* re, double* im, size_t cap);
ZAP_API zap_status zap_field_area(const zap_field* f, double* re, double* im);
ZAP_API zap_status zap_field_energy(const zap_field* f, double* out);

ZAP_API zap_status zap_preset(int index, zap_medium* out);
ZAP_API zap_status zap_propagate(const zap_field* f, const zap_medium* m, zap_field** out);
ZAP_API zap_status zap_energy_transmission(const zap_field* f, const zap_medium* m, double* out);

/* ---- mode analysis and shaping ---------------------------------------- */

/* |<lo(tau)|sig>| for each delay; both modes are normalised internally. */
ZAP_API zap_status zap_visibility_curve(const zap_field* sig, const zap_field* lo, const double* delays, size_t count,
                                        double* out);
ZAP_API zap_status zap_eta_curve(const zap_field* input, const zap_medium* m, const zap_field* lo, double eta_base,
                                 const double* delays, size_t count, double* out);
ZAP_API zap_status zap_max_unshaped_eta(const zap_field* input, const zap_medium* m, double eta_base, double* delay,
                                        double* eta);
ZAP_API zap_status zap_max_shaped_eta(const zap_field* input, const zap_medium* m, const zap_shaper* shaper,
                                      double eta_base, double* eta);

/* ---- heralded single-photon state ------------------------------------- */

ZAP_API zap_status zap_quadrature_pdf(double eta, double x, double* out);
ZAP_API zap_status zap_wigner(double eta, double x, double p, double* out);
ZAP_API zap_status zap_is_nonclassical(double eta, int* out);
ZAP_API zap_status zap_sample_quadratures(double eta, size_t n, uint64_t seed, double* out);
ZAP_API zap_status zap_estimate_eta(const double* values, size_t n, double* eta, double* standard_error,
                                    int* clamped);

#ifdef __cplusplus
}
#endif

#endif /* ZAPSIM_ZAPSIM_H */
