#ifndef ZAPSIM_SCENARIO_HPP
#define ZAPSIM_SCENARIO_HPP

#include "zapsim/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace zapsim
{

struct RunReport
{
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;  // grid adequacy, log-scale clamping
    std::vector<std::string> summary;   // one line per scalar result
};

// Each run writes into output.directory (created if needed). Every file
// starts with '#' lines echoing the full configuration. Numbers use 12
// significant digits so identical inputs give identical bytes.

/// propagate_<case>.csv: t_ps, re, im, abs of the transmitted envelope over
/// the scan window, with area ratio and energy transmission in the header.
RunReport run_propagate(const ScenarioConfig& cfg);

/// xcorr_<case>.csv: delay_ps, visibility, visibility_norm; plus xcorr_run.txt.
RunReport run_xcorr(const ScenarioConfig& cfg);

/// eta_scan_<case>.csv: delay_ps, eta, log10_eta, log_clamped.
RunReport run_eta_scan(const ScenarioConfig& cfg);

/// depth_scan.csv: preset, depth, t2_ps, eta_unshaped, eta_shaped, transmission.
RunReport run_efficiency_vs_depth(const ScenarioConfig& cfg);

/// wigner.csv: x, p, w for state.eta, or for the eta estimated from sampled
/// quadratures when wigner.sampled is set.
RunReport run_wigner(const ScenarioConfig& cfg);

/// quadratures.txt: one sampled quadrature per line.
RunReport run_sample(const ScenarioConfig& cfg);

/// Dispatches a CLI verb: propagate, xcorr, eta-scan, depth-scan, wigner, sample.
RunReport run_verb(const ScenarioConfig& cfg, std::string_view verb);

const std::vector<std::string>& verbs();

// Values below this are clamped in log10_eta columns.
inline constexpr double kLogFloor = 1e-12;

} // namespace zapsim

#endif // ZAPSIM_SCENARIO_HPP
