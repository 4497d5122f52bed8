#ifndef ZAPSIM_CONFIG_HPP
#define ZAPSIM_CONFIG_HPP

#include "zapsim/field.hpp"
#include "zapsim/medium.hpp"
#include "zapsim/shaper.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zapsim
{

/// Flat `section.key = value` settings. Every key has a default; an empty
/// value restores it. Unknown keys and malformed values are rejected on set().
class ScenarioConfig
{
public:
    ScenarioConfig();

    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    bool is_default(const std::string& key) const;

    /// All keys with their effective values, in canonical order, formatted
    /// as config lines. Feeding them back through load_config reproduces
    /// the configuration.
    std::vector<std::string> echo() const;

    static const std::vector<std::string>& keys();

private:
    std::map<std::string, std::string> values_;
};

/// Parses a config file, filling defaults, and validates the result.
/// Parse errors carry the line number; validation errors name the key.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Same as load_config for in-memory text.
ScenarioConfig parse_config(const std::string& text);

/// Applies a `section.key=value` override string.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

struct ScenarioCase
{
    int preset_index = 0;  // 0 for a custom medium
    std::string label;
    MediumParams medium;
};

/// Typed view of a validated configuration.
struct Scenario
{
    Grid grid = make_grid(2, 1.0);
    double pulse_fwhm = 0.0;       // s
    double pulse_detuning = 0.0;   // Hz
    std::vector<ScenarioCase> cases;
    bool shaper_enabled = true;
    ShaperConfig shaper;
    double eta_base = 0.62;
    std::vector<double> delays;    // s
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double state_eta = 0.62;
    bool wigner_sampled = false;
    double wigner_half_width = 4.0;
    std::size_t wigner_n_side = 81;
    std::filesystem::path output_directory;
    std::string output_format;

    TemporalField input_pulse() const;
};

/// Cross-field validation and unit conversion. Throws ValidationError naming
/// the offending key.
Scenario resolve(const ScenarioConfig& cfg);

} // namespace zapsim

#endif // ZAPSIM_CONFIG_HPP
