// Command-line front end. Talks to the library only through the C API.
#include "zapsim/zapsim.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace
{

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int exit_code(zap_status s)
{
    switch (s)
    {
    case ZAP_OK:
        return 0;
    case ZAP_ERR_VALIDATION:
        return kExitValidation;
    case ZAP_ERR_IO:
        return kExitIo;
    default:
        return kExitValidation;
    }
}

int report_error(zap_status s)
{
    std::fprintf(stderr, "zapsim: %s\n", zap_last_error());
    return exit_code(s);
}

using ConfigPtr = std::unique_ptr<zap_config, decltype(&zap_config_destroy)>;

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pulse propagation through a resonant vapour and homodyne detection of the result"};
    app.require_subcommand(1);
    app.set_version_flag("--version", zap_version());

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool quiet = false;

    const std::vector<std::pair<const char*, const char*>> verbs = {
        {"propagate", "transmitted envelope per case"},
        {"xcorr", "linear cross-correlation visibility versus delay"},
        {"eta-scan", "homodyne efficiency versus LO delay (unshaped LO)"},
        {"depth-scan", "best unshaped and shaped efficiency per case"},
        {"wigner", "Wigner function of the heralded state"},
        {"sample", "sampled homodyne quadratures"},
    };
    for (const auto& [name, help] : verbs)
    {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("-s,--set", overrides, "override, section.key=value (repeatable)");
        sub->add_option("-o,--out", out_dir, "output directory (output.directory)");
        sub->add_flag("-q,--quiet", quiet, "suppress the run summary");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    zap_config* raw = nullptr;
    zap_status st = config_path.empty() ? zap_config_create(&raw) : zap_config_load(config_path.c_str(), &raw);
    if (st != ZAP_OK)
        return report_error(st);
    ConfigPtr cfg(raw, &zap_config_destroy);

    for (const std::string& kv : overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
        {
            std::fprintf(stderr, "zapsim: override '%s' is not of the form section.key=value\n", kv.c_str());
            return kExitValidation;
        }
        st = zap_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (st != ZAP_OK)
            return report_error(st);
    }
    if (!out_dir.empty())
    {
        st = zap_config_set(cfg.get(), "output.directory", out_dir.c_str());
        if (st != ZAP_OK)
            return report_error(st);
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    std::vector<char> report(1 << 16);
    st = zap_run(cfg.get(), verb.c_str(), report.data(), report.size());
    if (st != ZAP_OK)
        return report_error(st);
    if (!quiet)
        std::fputs(report.data(), stdout);
    return 0;
}
