// advwave: figure data, power curves, correlation scans, detector rates and
// oracle validation as CSV + SVG.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "advwave/app/commands.hpp"
#include "advwave/app/config.hpp"

using namespace advwave::app;

int main(int argc, char** argv) {
    CLI::App app{"Vacuum-source field correlations of a decaying dipole: figure data and checks", "advwave"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string configPath;
    RunConfig flags;
    double gamma = 0, ratio = 0, r0 = 0, tmax = 0;
    int points = 0;
    std::string out;
    app.add_option("--config", configPath, "key = value config file; flags override it");
    auto* oOut = app.add_option("--out", out, "output directory (default .)");
    auto* oGamma = app.add_option("--gamma", gamma, "decay rate Gamma in s^-1 (default 1e8)");
    auto* oRatio = app.add_option("--omega0-ratio", ratio, "w0 / Gamma");
    auto* oR0 = app.add_option("--r0-gamma", r0, "Gamma r0 / c (default 1/3)");
    auto* oTmax = app.add_option("--tmax-gamma", tmax, "end time in units of 1/Gamma");
    auto* oPoints = app.add_option("--points", points, "grid points (minimum for figures)");

    int which = 0;
    auto* fig = app.add_subcommand("figure", "momentum-dispersion figure data (1, 2 or 3)");
    fig->add_option("which", which, "figure number")->required();

    std::string model;
    auto* pow = app.add_subcommand("power", "radiated power, perturbative or exact two-level");
    pow->add_option("model", model, "pert | nonpert")->required();

    auto* corr = app.add_subcommand("corr", "G, <D>, C trace scan over (t, t') at x = x' = r0");

    double xg = 0;
    auto* det = app.add_subcommand("detect", "identical-detector excitation rates with and without <D>");
    auto* oX = det->add_option("--x-gamma", xg, "detector distance Gamma |x| / c (default 1)");

    int count = 0;
    double span = 0, n2w = 0;
    auto* val = app.add_subcommand("validate", "Wigner-Weisskopf oracle and quadrature checks");
    auto* oCount = val->add_option("--count", count, "bath modes (default 1600)");
    auto* oSpan = val->add_option("--span", span, "band width in Gamma (default 200)");
    auto* oN2 = val->add_option("--n2-half-width", n2w, "N = 2 pair window half-width in Gamma (default 25)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    return guarded(
        [&] {
            if (*oGamma) flags.gamma = gamma;
            if (*oRatio) flags.omega0Ratio = ratio;
            if (*oR0) flags.r0Gamma = r0;
            if (*oTmax) flags.tmaxGamma = tmax;
            if (*oPoints) flags.points = points;
            if (*oOut) flags.outDir = out;
            if (*oX) flags.options["x_gamma"] = fmt_double(xg);
            if (*oCount) flags.options["count"] = std::to_string(count);
            if (*oSpan) flags.options["span"] = fmt_double(span);
            if (*oN2) flags.options["n2_half_width"] = fmt_double(n2w);
            if (!configPath.empty()) flags.merge_file(configPath);

            if (*fig) return cmd_figure(which, flags, std::cout);
            if (*pow) return cmd_power(model, flags, std::cout);
            if (*corr) return cmd_corr(flags, std::cout);
            if (*det) return cmd_detect(flags, std::cout);
            return cmd_validate(flags, std::cout);
        },
        std::cerr);
}
