#include "zapsim/config.hpp"

#include "zapsim/error.hpp"
#include "zapsim/modes.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zapsim
{
namespace
{

enum class Kind
{
    Real,
    OptionalReal,
    Count,
    Seed,
    Flag,
    Text,
    PresetList,
};

struct KeySpec
{
    const char* key;
    const char* fallback;
    Kind kind;
};

// Canonical order; defaults reproduce the 100 fs / 0.6 nm / eta 0.62 setup.
const KeySpec kKeys[] = {
    {"grid.n", "524288", Kind::Count},
    {"grid.dt_fs", "10", Kind::Real},
    {"pulse.fwhm_fs", "100", Kind::Real},
    {"pulse.detuning_ghz", "0", Kind::Real},
    {"medium.preset", "", Kind::PresetList},
    {"medium.depth", "", Kind::OptionalReal},
    {"medium.t2_ps", "", Kind::OptionalReal},
    {"medium.detune_ghz", "0", Kind::Real},
    {"shaper.enabled", "true", Kind::Flag},
    {"shaper.resolution_nm", "0.6", Kind::Real},
    {"shaper.pixel_nm", "", Kind::OptionalReal},
    {"shaper.span_nm", "100", Kind::Real},
    {"shaper.center_nm", "780", Kind::Real},
    {"detection.eta_base", "0.62", Kind::Real},
    {"scan.delay_min_ps", "-1", Kind::Real},
    {"scan.delay_max_ps", "12", Kind::Real},
    {"scan.delay_steps", "1301", Kind::Count},
    {"sampling.n_samples", "100000", Kind::Count},
    {"sampling.seed", "1", Kind::Seed},
    {"state.eta", "0.62", Kind::Real},
    {"wigner.sampled", "false", Kind::Flag},
    {"wigner.half_width", "4", Kind::Real},
    {"wigner.n_side", "81", Kind::Count},
    {"output.directory", "out", Kind::Text},
    {"output.format", "csv", Kind::Text},
};

const KeySpec* find_key(const std::string& key)
{
    for (const KeySpec& k : kKeys)
    {
        if (key == k.key)
            return &k;
    }
    return nullptr;
}

std::string trim(const std::string& s)
{
    const auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    const auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return first < last ? std::string(first, last) : std::string();
}

double parse_real(const std::string& key, const std::string& v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ValidationError(key + ": expected a real number, got '" + v + "'");
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ValidationError(key + ": expected a non-negative integer, got '" + v + "'");
    return out;
}

bool parse_flag(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ValidationError(key + ": expected true or false, got '" + v + "'");
}

std::vector<int> parse_presets(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    if (v.empty())
        return out;
    if (v == "all")
        return {1, 2, 3, 4, 5};
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        const std::uint64_t idx = parse_unsigned(key, item);
        if (idx < 1 || idx > 5)
            throw ValidationError(key + ": preset index must be in 1..5, got '" + item + "'");
        out.push_back(static_cast<int>(idx));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_syntax(const KeySpec& spec, const std::string& v)
{
    if (v.empty())
        return;
    switch (spec.kind)
    {
    case Kind::Real:
    case Kind::OptionalReal:
        parse_real(spec.key, v);
        break;
    case Kind::Count:
    case Kind::Seed:
        parse_unsigned(spec.key, v);
        break;
    case Kind::Flag:
        parse_flag(spec.key, v);
        break;
    case Kind::PresetList:
        parse_presets(spec.key, v);
        break;
    case Kind::Text:
        break;
    }
}

void require(bool ok, const std::string& key, const std::string& what)
{
    if (!ok)
        throw ValidationError(key + ": " + what);
}

} // namespace

ScenarioConfig::ScenarioConfig()
{
    for (const KeySpec& k : kKeys)
        values_[k.key] = k.fallback;
}

void ScenarioConfig::set(const std::string& key, const std::string& value)
{
    const KeySpec* spec = find_key(key);
    if (spec == nullptr)
        throw ValidationError("unknown configuration key '" + key + "'");
    const std::string v = trim(value);
    check_syntax(*spec, v);
    values_[key] = v.empty() ? std::string(spec->fallback) : v;
}

const std::string& ScenarioConfig::get(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ValidationError("unknown configuration key '" + key + "'");
    return it->second;
}

bool ScenarioConfig::is_default(const std::string& key) const
{
    const KeySpec* spec = find_key(key);
    return spec != nullptr && get(key) == spec->fallback;
}

std::vector<std::string> ScenarioConfig::echo() const
{
    std::vector<std::string> lines;
    for (const KeySpec& k : kKeys)
        lines.push_back(std::string(k.key) + " = " + values_.at(k.key));
    return lines;
}

const std::vector<std::string>& ScenarioConfig::keys()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const KeySpec& k : kKeys)
            out.emplace_back(k.key);
        return out;
    }();
    return names;
}

ScenarioConfig parse_config(const std::string& text)
{
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("line " + std::to_string(line_no) + ": expected 'section.key = value'");
        const std::string key = trim(line.substr(0, eq));
        try
        {
            cfg.set(key, line.substr(eq + 1));
        }
        catch (const ValidationError& e)
        {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    resolve(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override '" + assignment + "' is not of the form section.key=value");
    cfg.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

TemporalField Scenario::input_pulse() const
{
    return gaussian_pulse(grid, pulse_fwhm, 0.0, pulse_detuning);
}

Scenario resolve(const ScenarioConfig& cfg)
{
    auto real = [&](const char* key) { return parse_real(key, cfg.get(key)); };
    auto count = [&](const char* key) { return parse_unsigned(key, cfg.get(key)); };
    auto flag = [&](const char* key) { return parse_flag(key, cfg.get(key)); };

    Scenario s;

    const std::uint64_t n = count("grid.n");
    const double dt_fs = real("grid.dt_fs");
    require(n >= 2 && (n & (n - 1)) == 0, "grid.n", "must be a power of two >= 2");
    require(dt_fs > 0.0, "grid.dt_fs", "must be positive");
    s.grid = make_grid(static_cast<std::size_t>(n), dt_fs * 1e-15);

    s.pulse_fwhm = real("pulse.fwhm_fs") * 1e-15;
    require(s.pulse_fwhm > 0.0 && s.pulse_fwhm < s.grid.window(), "pulse.fwhm_fs",
            "must be positive and shorter than the grid window");
    s.pulse_detuning = real("pulse.detuning_ghz") * 1e9;
    require(std::abs(s.pulse_detuning) < s.grid.nyquist(), "pulse.detuning_ghz",
            "must be below the grid Nyquist frequency");

    const double detune_a = real("medium.detune_ghz") * 1e9;
    require(std::abs(detune_a) < s.grid.nyquist(), "medium.detune_ghz",
            "must be below the grid Nyquist frequency");
    const std::vector<int> presets = parse_presets("medium.preset", cfg.get("medium.preset"));
    const bool has_depth = !cfg.get("medium.depth").empty();
    const bool has_t2 = !cfg.get("medium.t2_ps").empty();
    if (!presets.empty())
    {
        require(!has_depth && !has_t2, "medium.preset", "cannot be combined with medium.depth or medium.t2_ps");
        for (int idx : presets)
        {
            const Preset p = preset(idx);
            s.cases.push_back({p.index, p.label, p.medium});
            s.cases.back().medium.detune_a = detune_a;
        }
    }
    else if (has_depth || has_t2)
    {
        require(has_depth, "medium.depth", "is required when medium.t2_ps is given");
        ScenarioCase c;
        c.label = "custom";
        c.medium.depth = real("medium.depth");
        c.medium.t2 = has_t2 ? real("medium.t2_ps") * 1e-12 : 270e-12;
        c.medium.detune_a = detune_a;
        require(c.medium.depth >= 0.0, "medium.depth", "must be >= 0");
        require(c.medium.t2 > 0.0, "medium.t2_ps", "must be positive");
        s.cases.push_back(c);
    }
    else
    {
        for (const Preset& p : temperature_presets())
        {
            s.cases.push_back({p.index, p.label, p.medium});
            s.cases.back().medium.detune_a = detune_a;
        }
    }

    s.shaper_enabled = flag("shaper.enabled");
    s.shaper.resolution_fwhm = real("shaper.resolution_nm") * 1e-9;
    s.shaper.span = real("shaper.span_nm") * 1e-9;
    s.shaper.center_wavelength = real("shaper.center_nm") * 1e-9;
    if (!cfg.get("shaper.pixel_nm").empty())
        s.shaper.pixel_width = real("shaper.pixel_nm") * 1e-9;
    require(s.shaper.resolution_fwhm >= 0.0, "shaper.resolution_nm", "must be >= 0 (0 = ideal shaper)");
    require(s.shaper.center_wavelength > 0.0, "shaper.center_nm", "must be positive");
    require(s.shaper.span > s.shaper.resolution_fwhm, "shaper.span_nm", "must exceed shaper.resolution_nm");
    require(!s.shaper.pixel_width || *s.shaper.pixel_width > 0.0, "shaper.pixel_nm", "must be positive");
    if (s.shaper.resolution_fwhm > 0.0)
    {
        const double fwhm_hz = wavelength_interval_to_hz(s.shaper.resolution_fwhm, s.shaper.center_wavelength);
        require(fwhm_hz >= 2.0 * s.grid.df(), "shaper.resolution_nm",
                "is finer than two frequency samples of the grid");
    }

    s.eta_base = real("detection.eta_base");
    require(s.eta_base >= 0.0 && s.eta_base <= 1.0, "detection.eta_base", "must lie in [0, 1]");

    const double dmin = real("scan.delay_min_ps") * 1e-12;
    const double dmax = real("scan.delay_max_ps") * 1e-12;
    const std::uint64_t steps = count("scan.delay_steps");
    const double limit = 0.25 * s.grid.window();
    require(dmax > dmin, "scan.delay_max_ps", "must exceed scan.delay_min_ps");
    require(std::abs(dmin) <= limit, "scan.delay_min_ps", "lies outside a quarter of the grid window");
    require(std::abs(dmax) <= limit, "scan.delay_max_ps", "lies outside a quarter of the grid window");
    require(steps >= 2, "scan.delay_steps", "must be >= 2");
    s.delays = linspace(dmin, dmax, static_cast<std::size_t>(steps));

    s.n_samples = static_cast<std::size_t>(count("sampling.n_samples"));
    require(s.n_samples >= 2, "sampling.n_samples", "must be >= 2");
    s.seed = count("sampling.seed");

    s.state_eta = real("state.eta");
    require(s.state_eta >= 0.0 && s.state_eta <= 1.0, "state.eta", "must lie in [0, 1]");
    s.wigner_sampled = flag("wigner.sampled");
    s.wigner_half_width = real("wigner.half_width");
    require(s.wigner_half_width > 0.0, "wigner.half_width", "must be positive");
    s.wigner_n_side = static_cast<std::size_t>(count("wigner.n_side"));
    require(s.wigner_n_side >= 2, "wigner.n_side", "must be >= 2");

    s.output_directory = cfg.get("output.directory");
    s.output_format = cfg.get("output.format");
    require(s.output_format == "csv", "output.format", "only 'csv' is supported");
    return s;
}

} // namespace zapsim
