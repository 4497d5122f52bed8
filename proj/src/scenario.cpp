#include "zapsim/scenario.hpp"

#include "zapsim/error.hpp"
#include "zapsim/modes.hpp"
#include "zapsim/parallel.hpp"
#include "zapsim/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace zapsim
{
namespace
{

std::string num(double v)
{
    if (v == 0.0)
        v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvFile
{
public:
    CsvFile(const std::filesystem::path& path, std::string_view verb, const ScenarioConfig& cfg,
            const std::string& leading = {})
        : path_(path)
    {
        if (!leading.empty())
            out_ << "# " << leading << '\n';
        out_ << "# zapsim " << verb << '\n';
        for (const std::string& line : cfg.echo())
            out_ << "# " << line << '\n';
    }

    void note(const std::string& line) { out_ << "# " << line << '\n'; }
    void header(std::initializer_list<const char*> cols)
    {
        bool first = true;
        for (const char* c : cols)
        {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
    }
    void row(std::initializer_list<double> values)
    {
        bool first = true;
        for (double v : values)
        {
            out_ << (first ? "" : ",") << num(v);
            first = false;
        }
        out_ << '\n';
    }
    void line(const std::string& text) { out_ << text << '\n'; }

    std::filesystem::path commit()
    {
        std::ofstream f(path_, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot write '" + path_.string() + "'");
        const std::string text = out_.str();
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!f)
            throw IoError("write failed for '" + path_.string() + "'");
        return path_;
    }

private:
    std::filesystem::path path_;
    std::ostringstream out_;
};

std::filesystem::path prepare_output(const Scenario& s)
{
    std::error_code ec;
    std::filesystem::create_directories(s.output_directory, ec);
    if (ec)
        throw IoError("cannot create output directory '" + s.output_directory.string() + "': " + ec.message());
    return s.output_directory;
}

std::string case_params(const ScenarioCase& c)
{
    std::ostringstream os;
    os << "case " << c.label << ": depth = " << num(c.medium.depth) << ", t2_ps = " << num(c.medium.t2 * 1e12)
       << ", detune_ghz = " << num(c.medium.detune_a * 1e-9);
    return os.str();
}

void add_diagnostics(RunReport& report, const std::vector<std::string>& warnings, const ScenarioCase& c,
                     CsvFile& file)
{
    for (const std::string& w : warnings)
    {
        report.warnings.push_back(c.label + ": " + w);
        file.note("warning: " + w);
    }
}

} // namespace

RunReport run_propagate(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);
    const TemporalField input = s.input_pulse();
    const Complex area_in = pulse_area(input);
    const SpectralField spec = to_spectrum(input);

    RunReport report;
    for (const ScenarioCase& c : s.cases)
    {
        const TemporalField out = to_time(propagate(spec, c.medium));
        const double te = energy_transmission(spec, c.medium);
        const double area_ratio = std::abs(pulse_area(out)) / std::abs(area_in);

        CsvFile file(dir / ("propagate_" + c.label + ".csv"), "propagate", cfg);
        file.note(case_params(c));
        file.note("area_ratio = " + num(area_ratio));
        file.note("energy_transmission = " + num(te));
        add_diagnostics(report, grid_diagnostics(input, c.medium), c, file);
        file.header({"t_ps", "re", "im", "abs"});
        const double tmin = s.delays.front();
        const double tmax = s.delays.back();
        for (std::size_t j = 0; j < out.size(); ++j)
        {
            const double t = s.grid.time(j);
            if (t < tmin || t > tmax)
                continue;
            file.row({t * 1e12, out[j].real(), out[j].imag(), std::abs(out[j])});
        }
        report.files.push_back(file.commit());
        report.summary.push_back(c.label + ": area_ratio = " + num(area_ratio) + ", transmission = " + num(te));
    }
    return report;
}

RunReport run_xcorr(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);
    const TemporalField input = s.input_pulse();

    RunReport report;
    CsvFile sidecar(dir / "xcorr_run.txt", "xcorr", cfg);
    for (const ScenarioCase& c : s.cases)
    {
        const TemporalField sig = propagate(input, c.medium);
        const ScanCurve raw = visibility_curve(sig, input, s.delays);
        const ScanCurve norm = peak_normalized(raw);
        const CurvePeak peak = peak_eta(raw);

        CsvFile file(dir / ("xcorr_" + c.label + ".csv"), "xcorr", cfg);
        file.note(case_params(c));
        const auto warnings = grid_diagnostics(input, c.medium);
        add_diagnostics(report, warnings, c, file);
        file.header({"delay_ps", "visibility", "visibility_norm"});
        for (std::size_t i = 0; i < raw.xs.size(); ++i)
            file.row({raw.xs[i] * 1e12, raw.ys[i], norm.ys[i]});
        report.files.push_back(file.commit());

        sidecar.note(case_params(c));
        sidecar.note("  grid: n = " + std::to_string(s.grid.size()) + ", dt_s = " + num(s.grid.dt())
                     + ", df_hz = " + num(s.grid.df()) + ", line samples = "
                     + num(1.0 / (std::numbers::pi * c.medium.t2) / s.grid.df()));
        sidecar.note("  peak visibility = " + num(peak.y) + " at delay_ps = " + num(peak.x * 1e12));
        for (const std::string& w : warnings)
            sidecar.note("  warning: " + w);
        if (warnings.empty())
            sidecar.note("  grid adequate");
        report.summary.push_back(c.label + ": peak visibility " + num(peak.y) + " at " + num(peak.x * 1e12) + " ps");
    }
    report.files.push_back(sidecar.commit());
    return report;
}

RunReport run_eta_scan(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);
    const TemporalField input = s.input_pulse();

    RunReport report;
    for (const ScenarioCase& c : s.cases)
    {
        const ScanCurve eta = eta_curve(input, c.medium, input, s.eta_base, s.delays);
        const CurvePeak peak = peak_eta(eta);

        CsvFile file(dir / ("eta_scan_" + c.label + ".csv"), "eta-scan", cfg);
        file.note(case_params(c));
        file.note("eta_base = " + num(s.eta_base));
        file.note("peak eta = " + num(peak.y) + " at delay_ps = " + num(peak.x * 1e12));
        file.note("log10_eta floor = " + num(kLogFloor) + " (log_clamped = 1 marks clamped rows)");
        add_diagnostics(report, grid_diagnostics(input, c.medium), c, file);
        file.header({"delay_ps", "eta", "log10_eta", "log_clamped"});
        std::size_t clamped = 0;
        for (std::size_t i = 0; i < eta.xs.size(); ++i)
        {
            const bool low = eta.ys[i] < kLogFloor;
            clamped += low ? 1 : 0;
            file.row({eta.xs[i] * 1e12, eta.ys[i], std::log10(low ? kLogFloor : eta.ys[i]), low ? 1.0 : 0.0});
        }
        if (clamped > 0)
            report.warnings.push_back(c.label + ": " + std::to_string(clamped) + " eta values clamped to the log floor");
        report.files.push_back(file.commit());
        report.summary.push_back(c.label + ": peak eta " + num(peak.y) + " at " + num(peak.x * 1e12) + " ps");
    }
    return report;
}

RunReport run_efficiency_vs_depth(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);
    const TemporalField input = s.input_pulse();

    struct Row
    {
        double unshaped = 0.0;
        double shaped = 0.0;
        double transmission = 0.0;
        std::vector<std::string> warnings;
    };
    std::vector<Row> rows(s.cases.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const MediumParams& m = s.cases[i].medium;
        Row& r = rows[i];
        r.unshaped = max_unshaped_eta(input, m, s.eta_base);
        r.transmission = energy_transmission(to_spectrum(input), m);
        r.shaped = s.shaper_enabled ? max_shaped_eta(input, m, s.shaper, s.eta_base) : r.unshaped;
        r.warnings = grid_diagnostics(input, m);
    });

    RunReport report;
    CsvFile file(dir / "depth_scan.csv", "depth-scan", cfg);
    file.note("eta_shaped uses the configured shaper resolution; shaper disabled means eta_shaped = eta_unshaped");
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        file.note(case_params(s.cases[i]));
        add_diagnostics(report, rows[i].warnings, s.cases[i], file);
    }
    file.header({"preset", "depth", "t2_ps", "eta_unshaped", "eta_shaped", "transmission"});
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const ScenarioCase& c = s.cases[i];
        file.row({static_cast<double>(c.preset_index), c.medium.depth, c.medium.t2 * 1e12, rows[i].unshaped,
                  rows[i].shaped, rows[i].transmission});
        report.summary.push_back(c.label + ": eta_unshaped " + num(rows[i].unshaped) + ", eta_shaped "
                                 + num(rows[i].shaped) + ", transmission " + num(rows[i].transmission));
    }
    report.files.push_back(file.commit());
    return report;
}

RunReport run_wigner(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);

    double eta = s.state_eta;
    std::string source = "closed form at state.eta";
    RunReport report;
    CsvFile file(dir / "wigner.csv", "wigner", cfg);
    if (s.wigner_sampled)
    {
        const QuadratureSample q = sample_quadratures(HeraldedState(s.state_eta), s.n_samples, s.seed);
        const EtaEstimate est = estimate_eta(q);
        eta = est.eta;
        source = "moment estimate from sampled quadratures";
        file.note("estimated eta = " + num(est.eta) + " +/- " + num(est.standard_error)
                  + (est.clamped ? " (clamped to [0, 1])" : ""));
        report.summary.push_back("estimated eta " + num(est.eta) + " +/- " + num(est.standard_error));
        if (est.clamped)
            report.warnings.push_back("estimated eta clamped to [0, 1] (raw " + num(est.raw) + ")");
    }
    const HeraldedState state(eta);
    const WignerGrid grid = wigner_grid(state, s.wigner_half_width, s.wigner_n_side);
    const double w0 = wigner(state, 0.0, 0.0);
    const bool nonclassical = is_nonclassical(state);

    file.note("quadrature convention: " + std::string(kQuadratureConvention));
    file.note("eta source: " + source);
    file.note("eta = " + num(eta));
    file.note("W(0,0) = " + num(w0));
    file.note(std::string("nonclassical = ") + (nonclassical ? "true" : "false"));
    file.header({"x", "p", "w"});
    for (std::size_t ix = 0; ix < grid.n_side; ++ix)
    {
        for (std::size_t ip = 0; ip < grid.n_side; ++ip)
            file.row({grid.coordinate(ix), grid.coordinate(ip), grid.at(ix, ip)});
    }
    report.files.push_back(file.commit());
    report.summary.push_back("eta = " + num(eta) + ", W(0,0) = " + num(w0)
                             + ", nonclassical = " + (nonclassical ? "true" : "false"));
    return report;
}

RunReport run_sample(const ScenarioConfig& cfg)
{
    const Scenario s = resolve(cfg);
    const auto dir = prepare_output(s);
    const QuadratureSample q = sample_quadratures(HeraldedState(s.state_eta), s.n_samples, s.seed);
    const EtaEstimate est = estimate_eta(q);

    std::ostringstream first;
    first << "quadratures convention=\"" << q.convention << "\" seed=" << q.seed << " eta=" << num(s.state_eta)
          << " n=" << q.values.size();
    CsvFile file(dir / "quadratures.txt", "sample", cfg, first.str());
    file.note("estimated eta = " + num(est.eta) + " +/- " + num(est.standard_error));
    for (double v : q.values)
        file.line(num(v));
    RunReport report;
    report.files.push_back(file.commit());
    report.summary.push_back("sampled " + std::to_string(q.values.size()) + " quadratures, estimated eta "
                             + num(est.eta) + " +/- " + num(est.standard_error));
    return report;
}

const std::vector<std::string>& verbs()
{
    static const std::vector<std::string> names = {"propagate", "xcorr", "eta-scan", "depth-scan", "wigner", "sample"};
    return names;
}

RunReport run_verb(const ScenarioConfig& cfg, std::string_view verb)
{
    if (verb == "propagate")
        return run_propagate(cfg);
    if (verb == "xcorr")
        return run_xcorr(cfg);
    if (verb == "eta-scan")
        return run_eta_scan(cfg);
    if (verb == "depth-scan")
        return run_efficiency_vs_depth(cfg);
    if (verb == "wigner")
        return run_wigner(cfg);
    if (verb == "sample")
        return run_sample(cfg);
    throw ValidationError("unknown verb '" + std::string(verb) + "'");
}

} // namespace zapsim
