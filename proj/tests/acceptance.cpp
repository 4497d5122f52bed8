// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [work_dir]
#include "zapsim/field.hpp"
#include "zapsim/medium.hpp"
#include "zapsim/modes.hpp"
#include "zapsim/quantum.hpp"
#include "zapsim/shaper.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace zapsim;
namespace fs = std::filesystem;
using boost::math::quadrature::gauss_kronrod;

namespace
{

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Grid default_grid() { return make_grid(std::size_t{1} << 19, 10e-15); }

TemporalField default_pulse(const Grid& g) { return gaussian_pulse(g, 100e-15, 0.0, 0.0); }

double integrate(const std::function<double(double)>& f, double a, double b)
{
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// 1 - T_E by adaptive quadrature over x = 2 pi nu t2 for a resonant Gaussian of
// intensity FWHM w (spectral intensity exp(-sigma^2 x^2 / t2^2)).
double transmission_oracle(const MediumParams& m, double w)
{
    const double sigma2 = w * w / (4.0 * std::log(2.0));
    const double c = sigma2 / (m.t2 * m.t2);
    const auto loss = [&](double x) { return -std::expm1(-2.0 * m.depth / (1.0 + x * x)) * std::exp(-c * x * x); };
    const double breaks[] = {0.0, 10.0, 100.0, 1000.0, 1e4, 1e5, kInf};
    double num = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(breaks); ++i)
        num += gauss_kronrod<double, 61>::integrate(loss, breaks[i], breaks[i + 1], 20, 1e-14);
    const double den = integrate([&](double x) { return std::exp(-c * x * x); }, 0.0, kInf);
    return 1.0 - num / den;
}

Outcome criterion_area_theorem()
{
    Outcome o;
    const Grid g = default_grid();
    double worst_time = 0.0;
    double worst_err = 0.0;
    for (double depth : {0.5, 1.0, 5.0, 20.0})
    {
        const auto t0 = Clock::now();
        const TemporalField in = default_pulse(g);
        const TemporalField out = propagate(in, {depth, 270e-12, 0.0});
        const double ratio = std::abs(pulse_area(out) / pulse_area(in));
        const double elapsed = seconds_since(t0);
        const double err = std::abs(ratio - std::exp(-depth)) / std::exp(-depth);
        worst_err = std::max(worst_err, err);
        worst_time = std::max(worst_time, elapsed);
        o.require(err < 1e-9, "depth " + fmt("%g", depth) + " relative error " + fmt("%.3g", err));
        o.require(elapsed < 1.0, "depth " + fmt("%g", depth) + " took " + fmt("%.3f", elapsed) + " s");
    }
    o.note("worst relative error " + fmt("%.2e", worst_err) + ", slowest case " + fmt("%.3f", worst_time) + " s");
    return o;
}

Outcome criterion_transform_fidelity()
{
    Outcome o;
    const Grid g = default_grid();
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> d;
    ComplexVector v(g.size());
    for (auto& z : v)
        z = {d(rng), d(rng)};
    const TemporalField f(g, v);
    const SpectralField s = to_spectrum(f);
    const TemporalField back = to_time(s);

    double num = 0.0;
    double den = 0.0;
    double et = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
    {
        num += std::norm(back[j] - f[j]);
        den += std::norm(f[j]);
        et += std::norm(f[j]);
    }
    et *= g.dt();
    double ef = 0.0;
    for (const Complex& z : s.amp())
        ef += std::norm(z);
    ef *= g.df();
    const double rms = std::sqrt(num / den);
    const double parseval = std::abs(ef - et) / et;
    o.require(rms < 1e-12, "round-trip RMS " + fmt("%.3g", rms));
    o.require(parseval < 1e-12, "Parseval mismatch " + fmt("%.3g", parseval));

    // Causality of the medium response, judged against the peak of the
    // response tail (the delta at t = 0 is excluded from the reference).
    double worst = 0.0;
    for (const Preset& p : temperature_presets())
    {
        const TemporalField h = impulse_response(g, p.medium);
        double peak = 0.0;
        double pre = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
        {
            const double t = g.time(j);
            if (t > 0.5 * g.dt())
                peak = std::max(peak, std::abs(h[j]));
            else if (t < -1.5 * g.dt())
                pre = std::max(pre, std::abs(h[j]));
        }
        worst = std::max(worst, pre / peak);
    }
    o.require(worst < 1e-6, "pre-pulse " + fmt("%.3g", worst) + " of peak");
    o.note("round-trip RMS " + fmt("%.2e", rms) + ", Parseval " + fmt("%.2e", parseval) + ", worst pre-pulse "
           + fmt("%.2e", worst) + " of peak over presets 1-5");
    return o;
}

Outcome criterion_absorption_and_reshaping()
{
    Outcome o;
    const Grid g = default_grid();
    const TemporalField in = default_pulse(g);
    const MediumParams m = preset(3).medium;

    const double te = energy_transmission(to_spectrum(in), m);
    const double oracle = transmission_oracle(m, 100e-15);
    o.require(te > 0.9, "energy transmission " + fmt("%.6f", te));
    o.require(std::abs(te - oracle) / oracle < 1e-6, "transmission differs from quadrature " + fmt("%.9f", oracle));

    const ScanCurve v = visibility_curve(propagate(in, m), in, linspace(-1e-12, 12e-12, 1301));
    // Lobes separated by nulls (below 10% of the smaller neighbouring crest)
    // within the first 4 ps after the main peak.
    const auto lobes = find_lobes(v, 0.0, 4e-12);
    const std::size_t secondary = lobes.empty() ? 0 : lobes.size() - 1;
    o.require(secondary >= 2, "only " + std::to_string(secondary) + " secondary lobes within 4 ps");
    std::string where;
    for (std::size_t i = 1; i < lobes.size(); ++i)
    {
        where += (i > 1 ? ", " : "") + std::string("null ") + fmt("%.2f", lobes[i].start_x * 1e12) + " ps";
        if (lobes[i].clipped)
        {
            // Report where the crest of an edge lobe actually lies.
            const auto beyond = find_lobes(v, lobes[i].start_x, 12e-12);
            if (!beyond.empty())
                where += " -> crest " + fmt("%.2f", beyond.front().crest_x * 1e12) + " ps (beyond window)";
        }
        else
        {
            where += " -> crest " + fmt("%.2f", lobes[i].crest_x * 1e12) + " ps";
        }
    }
    o.note("T_E " + fmt("%.9f", te) + " (quadrature " + fmt("%.9f", oracle) + "); " + std::to_string(secondary)
           + " secondary lobes: " + where);
    return o;
}

Outcome criterion_lobe_crossover()
{
    Outcome o;
    const Grid g = default_grid();
    const TemporalField in = default_pulse(g);
    const MediumParams m = preset(5).medium;
    const ScanCurve eta = eta_curve(in, m, in, 0.62, linspace(-1e-12, 12e-12, 1301));

    // Local maxima of the scan; the main lobe is the one nearest the
    // unperturbed peak delay (0).
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < eta.ys.size(); ++i)
    {
        if (eta.ys[i] > eta.ys[i - 1] && eta.ys[i] >= eta.ys[i + 1])
            maxima.push_back(i);
    }
    if (maxima.empty())
    {
        o.require(false, "no local maxima");
        return o;
    }
    std::size_t main = maxima.front();
    std::size_t best = maxima.front();
    for (std::size_t i : maxima)
    {
        if (std::abs(eta.xs[i]) < std::abs(eta.xs[main]))
            main = i;
        if (eta.ys[i] > eta.ys[best])
            best = i;
    }
    const CurvePeak refined = unshaped_peak(in, m, 0.62);
    o.require(best != main, "global maximum sits on the main lobe");
    // A dip separates the two maxima, so they are distinct lobes.
    double dip = eta.ys[std::min(main, best)];
    for (std::size_t i = std::min(main, best); i <= std::max(main, best); ++i)
        dip = std::min(dip, eta.ys[i]);
    o.require(dip < eta.ys[main], "maxima not separated by a dip");
    o.require(std::abs(refined.x - eta.xs[best]) <= 10e-15, "refined optimum strays from the secondary lobe");
    o.note("main lobe eta " + fmt("%.4f", eta.ys[main]) + " at " + fmt("%.2f", eta.xs[main] * 1e12)
           + " ps; maximum eta " + fmt("%.4f", refined.y) + " at " + fmt("%.3f", refined.x * 1e12)
           + " ps; dip between " + fmt("%.4f", dip));
    return o;
}

Outcome criterion_shaping_recovery()
{
    Outcome o;
    const Grid g = default_grid();
    const TemporalField in = default_pulse(g);
    const SpectralField spec = to_spectrum(in);
    ShaperConfig real_shaper;
    real_shaper.resolution_fwhm = 0.6e-9;
    ShaperConfig ideal;
    ideal.resolution_fwhm = 0.0;

    double previous = std::numeric_limits<double>::infinity();
    std::string table;
    double worst_ideal = 0.0;
    for (const Preset& p : temperature_presets())
    {
        const double te = energy_transmission(spec, p.medium);
        const double unshaped = max_unshaped_eta(in, p.medium, 0.62);
        const double shaped = max_shaped_eta(in, p.medium, real_shaper, 0.62);
        const double limit = max_shaped_eta(in, p.medium, ideal, 0.62);
        o.require(shaped >= unshaped, p.label + " shaped below unshaped");
        o.require(shaped <= previous, p.label + " shaped increases");
        const double ideal_err = std::abs(limit - 0.62 * te);
        worst_ideal = std::max(worst_ideal, ideal_err);
        o.require(ideal_err < 1e-6, p.label + " ideal limit off by " + fmt("%.3g", ideal_err));
        previous = shaped;
        table += (table.empty() ? "" : ", ") + std::to_string(p.index) + ": " + fmt("%.4f", unshaped) + "/"
                 + fmt("%.4f", shaped);
    }
    o.note("unshaped/shaped " + table + "; ideal-limit error " + fmt("%.2e", worst_ideal));
    return o;
}

Outcome criterion_wigner()
{
    Outcome o;
    double worst_origin = 0.0;
    double worst_norm = 0.0;
    double worst_marginal = 0.0;
    for (double eta : {0.0, 0.5, 0.62, 1.0})
    {
        const HeraldedState s(eta);
        worst_origin = std::max(worst_origin, std::abs(wigner(s, 0.0, 0.0) - (1.0 - 2.0 * eta) / kPi));
        const bool negative = wigner(s, 0.0, 0.0) < 0.0;
        o.require(is_nonclassical(s) == (eta > 0.5), "nonclassical flag at eta " + fmt("%g", eta));
        o.require(negative == (eta > 0.5), "sign of W(0,0) at eta " + fmt("%g", eta));

        const auto inner = [&](double x) { return integrate([&](double p) { return wigner(s, x, p); }, -6.0, 6.0); };
        worst_norm = std::max(worst_norm, std::abs(integrate(inner, -6.0, 6.0) - 1.0));
        for (double x = -3.0; x <= 3.0; x += 0.25)
        {
            const double marginal = integrate([&](double p) { return wigner(s, x, p); }, -kInf, kInf);
            worst_marginal = std::max(worst_marginal, std::abs(marginal - quadrature_pdf(s, x)));
        }
    }
    // Negativity threshold on a fine eta ladder.
    for (int i = 0; i <= 100; ++i)
    {
        const HeraldedState s(i / 100.0);
        o.require(is_nonclassical(s) == (wigner(s, 0.0, 0.0) < 0.0), "flag/sign disagree at " + fmt("%g", i / 100.0));
    }
    o.require(worst_origin < 1e-12, "W(0,0) error " + fmt("%.3g", worst_origin));
    o.require(worst_norm < 1e-6, "normalisation error " + fmt("%.3g", worst_norm));
    o.require(worst_marginal < 1e-6, "marginal error " + fmt("%.3g", worst_marginal));
    o.note("W(0,0) error " + fmt("%.1e", worst_origin) + ", normalisation " + fmt("%.1e", worst_norm)
           + ", marginal " + fmt("%.1e", worst_marginal));
    return o;
}

Outcome criterion_estimator()
{
    Outcome o;
    const auto t0 = Clock::now();
    std::string table;
    std::uint64_t seed = 1;
    for (double eta : {0.0, 0.25, 0.5, 0.62, 1.0})
    {
        const EtaEstimate e = estimate_eta(sample_quadratures(HeraldedState(eta), 100000, seed++));
        const double z = std::abs(e.eta - eta) / e.standard_error;
        o.require(z < 3.0, "eta " + fmt("%g", eta) + " off by " + fmt("%.2f", z) + " stderr");
        table += (table.empty() ? "" : ", ") + fmt("%g", eta) + "->" + fmt("%.4f", e.eta) + "+/-"
                 + fmt("%.4f", e.standard_error);
    }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 5.0, "took " + fmt("%.2f", elapsed) + " s");
    o.note(table + "; " + fmt("%.2f", elapsed) + " s");
    return o;
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
    {
        std::ifstream f(e.path(), std::ios::binary);
        std::ostringstream os;
        os << f.rdbuf();
        files[e.path().filename().string()] = os.str();
    }
    return files;
}

Outcome criterion_determinism(const fs::path& work)
{
    Outcome o;
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path cfg = work / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# default physics, sampled Wigner pipeline\n"
          << "wigner.sampled = true\n"
          << "sampling.seed = 17\n";
    }
    const fs::path out = work / "out";
    const auto run_all = [&](const char* threads) {
        fs::remove_all(out);
        for (const char* verb : {"xcorr", "eta-scan", "depth-scan", "wigner", "sample"})
        {
            const std::string cmd = std::string("ZAPSIM_THREADS=") + threads + " \"" + ZAPSIM_CLI_PATH + "\" "
                                    + verb + " --quiet --config \"" + cfg.string() + "\" --out \"" + out.string()
                                    + "\"";
            if (std::system(cmd.c_str()) != 0)
                return false;
        }
        return true;
    };
    const bool ok1 = run_all("1");
    const auto first = ok1 ? snapshot(out) : std::map<std::string, std::string>{};
    const bool ok4 = run_all("4");
    const auto second = ok4 ? snapshot(out) : std::map<std::string, std::string>{};
    const bool ok4b = run_all("4");
    const auto third = ok4b ? snapshot(out) : std::map<std::string, std::string>{};
    o.require(ok1 && ok4 && ok4b, "CLI run failed");
    o.require(!first.empty() && first.size() == second.size(), "different file sets");
    std::size_t identical = 0;
    for (const auto& [name, bytes] : first)
    {
        const auto it = second.find(name);
        const auto jt = third.find(name);
        const bool same = it != second.end() && jt != third.end() && it->second == bytes && jt->second == bytes;
        o.require(same, name + " differs");
        identical += same ? 1 : 0;
    }
    o.note(std::to_string(identical) + " files byte-identical across 3 runs (ZAPSIM_THREADS=1, 4, 4)");
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "zapsim_acceptance";
    struct Criterion
    {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "area theorem", criterion_area_theorem},
        {2, "transform fidelity and causality", criterion_transform_fidelity},
        {3, "negligible absorption with strong reshaping", criterion_absorption_and_reshaping},
        {4, "lobe crossover at the deepest preset", criterion_lobe_crossover},
        {5, "shaping recovery", criterion_shaping_recovery},
        {6, "Wigner identities", criterion_wigner},
        {7, "eta estimator", criterion_estimator},
        {8, "CLI determinism", [&] { return criterion_determinism(work); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria)
    {
        const auto t0 = Clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception& e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
