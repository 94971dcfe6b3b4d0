#include "advwave/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "advwave/app/csv.hpp"
#include "advwave/app/svg.hpp"
#include "advwave/atomdyn.hpp"
#include "advwave/correlations.hpp"
#include "advwave/fieldcoeffs.hpp"
#include "advwave/kinetics.hpp"
#include "advwave/oracle.hpp"
#include "advwave/photodetect.hpp"
#include "advwave/radiometry.hpp"

namespace advwave::app {

namespace {

const Vec3 kDipoleAxis{0, 0, 1};
const Vec3 kProbeAxis{1, 0, 0};  // perpendicular to the dipole: radiation pattern maximum

void write_header(CsvWriter& csv, const Resolved& r, const std::vector<std::pair<std::string, std::string>>& extra) {
    csv.comment("advwave " + r.command);
    csv.comments(r.describe());
    csv.comment("units = natural (hbar = c = 1); times are reported as t*Gamma");
    csv.comments(extra);
}

DipoleParams dipole(const Resolved& r) {
    return DipoleParams::from_rate(r.omega0Ratio * r.gamma, r.gamma, kDipoleAxis);
}

}  // namespace

int cmd_figure(int which, const RunConfig& cfg, std::ostream& log) {
    if (which < 1 || which > 3) throw UsageError("figure: expected 1, 2 or 3");
    Defaults d;
    d.omega0Ratio = which == 1 ? 10 : 100;
    d.tmaxGamma = which == 3 ? 20 : 10;
    Resolved r = resolve(cfg, "figure " + std::to_string(which), d);
    if (r.tmaxGamma < 2 * r.r0Gamma) throw UsageError("figure: tmax_gamma must be at least 2 r0_gamma");
    if (which == 3 && r.tmaxGamma < 10) throw UsageError("figure 3: the long-time fit needs tmax_gamma >= 10");

    const double G = r.gamma;
    DipoleParams p = dipole(r);
    ChargeParams c;
    c.r0 = kProbeAxis * (r.r0Gamma / G);
    std::vector<std::pair<std::string, std::string>> extra{
        {"columns", "t_gamma = t*Gamma; n_dps, n_dpvacs, n_dptotal = N*[dp^2(t) - dp^2] parts"},
        {"norm_constant_N", fmt_double(norm_constant(p, c))}};
    if (auto w = c.radiation_zone_warning(p)) {
        extra.emplace_back("warning", *w);
        log << "warning: " << *w << '\n';
    }
    auto cv = dispersion_change(dispersion_grid(r.tmaxGamma / G, p, r.points), p, c);

    std::string base = "fig" + std::to_string(which);
    CsvWriter csv(output_path(r.outDir, base + ".csv"));
    write_header(csv, r, extra);
    csv.header({"t_gamma", "n_dps", "n_dpvacs", "n_dptotal"});
    std::vector<double> tg(cv.times.size());
    for (std::size_t i = 0; i < cv.times.size(); ++i) {
        tg[i] = cv.times[i] * G;
        csv.row({tg[i], cv.cumSource[i], cv.cumVacS[i], cv.cumTotal[i]});
    }
    std::vector<Series> series;
    if (which == 3) {
        double t2 = r.tmaxGamma, t1 = std::max(5.0, t2 / 2);
        auto fit = longtime_fit(cv, t1 / G, t2 / G);
        csv.comment("fit_window_gamma = " + fmt_double(t1) + " " + fmt_double(t2));
        csv.comment("fit_slope_over_gamma = " + fmt_double(fit.slope / G));
        csv.comment("fit_intercept = " + fmt_double(fit.intercept));
        log << "fit: slope/Gamma = " << fit.slope / G << ", intercept = " << fit.intercept << '\n';
        series.push_back({"N[dp(t) - dp]", tg, cv.cumTotal});
        std::vector<double> line(tg.size());
        for (std::size_t i = 0; i < tg.size(); ++i) line[i] = fit.intercept + fit.slope / G * tg[i];
        series.push_back({"k + Gamma t", tg, line});
    } else {
        series.push_back({"source", tg, cv.cumSource});
        series.push_back({"vacuum-source", tg, cv.cumVacS});
    }
    csv.close();
    write_svg(output_path(r.outDir, base + ".svg"), "figure " + std::to_string(which), "t Gamma",
              "N [dp(t) - dp]", series);
    log << "wrote " << base << ".csv, " << base << ".svg (" << cv.times.size() << " rows)\n";
    return kOk;
}

int cmd_power(const std::string& model, const RunConfig& cfg, std::ostream& log) {
    if (model != "pert" && model != "nonpert") throw UsageError("power: model must be 'pert' or 'nonpert'");
    Defaults d;
    d.points = 201;
    Resolved r = resolve(cfg, "power " + model, d);
    DipoleParams p = dipole(r);
    const double G = r.gamma;
    CsvWriter csv(output_path(r.outDir, "power_" + model + ".csv"));

    if (model == "pert") {
        LevelScheme s({0.0, p.omega0}, 1);
        s.set_dipole(0, 1, p.dvec);
        auto b = power_breakdown_pert(s, 1);
        write_header(csv, r, {{"scheme", "two-level, emitter in the upper level"}});
        csv.header({"p_g", "p_s", "p_vacs", "p_total"});
        csv.row({b.pG, b.pS, b.pVacS, b.pTotal});
        csv.close();
        log << "wrote power_pert.csv\n";
        return kOk;
    }
    double x = r.r0Gamma / G;
    write_header(csv, r, {{"probe_radius_gamma", fmt_double(r.r0Gamma)}, {"time_axis", "t_r = t - |x|"}});
    csv.header({"t_gamma", "tr_gamma", "p_g", "p_s", "p_vacs", "p_total"});
    std::vector<double> tg, pg, ps, pv, pt;
    for (int i = 0; i < r.points; ++i) {
        double trg = r.tmaxGamma * i / (r.points - 1);
        auto b = power_curves_2lvl(x + trg / G, x, p);
        csv.row({(x + trg / G) * G, trg, b.pG, b.pS, b.pVacS, b.pTotal});
        tg.push_back(trg);
        pg.push_back(b.pG / (p.omega0 * G));
        ps.push_back(b.pS / (p.omega0 * G));
        pv.push_back(b.pVacS / (p.omega0 * G));
        pt.push_back(b.pTotal / (p.omega0 * G));
    }
    csv.close();
    write_svg(output_path(r.outDir, "power_nonpert.svg"), "radiated power", "t_r Gamma", "P / (w0 Gamma)",
              {{"P_G", tg, pg}, {"P_s", tg, ps}, {"P_vac-s", tg, pv}, {"P", tg, pt}});
    log << "wrote power_nonpert.csv, power_nonpert.svg\n";
    return kOk;
}

int cmd_corr(const RunConfig& cfg, std::ostream& log) {
    Defaults d;
    d.points = 41;
    d.tmaxGamma = 2;
    Resolved r = resolve(cfg, "corr", d);
    DipoleParams p = dipole(r);
    const double G = r.gamma;
    Vec3 x = kProbeAxis * (r.r0Gamma / G);
    CorrKernel k(FieldKind::Electric, FieldKind::Electric, x, x, p, CoeffMode::Radiative);
    double e2 = norm2(coeffs_two_level(x, p).eRad);
    double h = r.tmaxGamma / (r.points - 1);
    double boundary = 2 * r.r0Gamma;

    CsvWriter csv(output_path(r.outDir, "corr.csv"));
    write_header(csv, r,
                 {{"geometry", "x = x' = r0 along the axis perpendicular to the dipole, E-E traces"},
                  {"normalisation", "traces divided by |E_rad(r0)|^2 = " + fmt_double(e2)},
                  {"boundary", "t' - t = 2 r0 = " + fmt_double(boundary) + " (t*Gamma units); on_boundary marks the nearest column"}});
    csv.header({"t_gamma", "tp_gamma", "g_re", "g_im", "delta_re", "delta_im", "c_re", "c_im", "on_boundary"});
    for (int i = 0; i < r.points; ++i)
        for (int j = 0; j < r.points; ++j) {
            double tgm = h * i, tpg = h * j;
            cplx gv = k.glauber_trace(tgm / G, tpg / G) / e2;
            cplx dv = k.delta_trace(tgm / G, tpg / G) / e2;
            cplx cv = gv + dv;
            double flag = std::abs(tpg - tgm - boundary) <= 0.5 * h ? 1 : 0;
            csv.row({tgm, tpg, gv.real(), gv.imag(), dv.real(), dv.imag(), cv.real(), cv.imag(), flag});
        }
    csv.close();
    log << "wrote corr.csv (" << r.points * r.points << " rows)\n";
    return kOk;
}

int cmd_detect(const RunConfig& cfg, std::ostream& log) {
    Defaults d;
    d.points = 401;
    Resolved r = resolve(cfg, "detect", d);
    double xg = r.option("x_gamma", 1);
    if (!(xg > 0)) throw UsageError("detect: x_gamma must be positive");
    if (!cfg.tmaxGamma) r.tmaxGamma = 2 * xg + 10;
    const double G = r.gamma;
    auto det = DetectorConfig::identical(kProbeAxis * (xg / G), dipole(r));
    std::vector<double> grid(r.points);
    for (int i = 0; i < r.points; ++i) grid[i] = r.tmaxGamma / G * i / (r.points - 1);
    auto rep = suppression_report(det, grid);

    CsvWriter csv(output_path(r.outDir, "detect.csv"));
    write_header(csv, r,
                 {{"detector", "identical two-level detector at |x| = x_gamma/Gamma, perpendicular to d"},
                  {"x_gamma", fmt_double(xg)},
                  {"max_rate_g", fmt_double(rep.maxRateG)},
                  {"max_abs_diff_after_2x", fmt_double(rep.maxAbsDiff)},
                  {"max_ratio", fmt_double(rep.maxRatio)}});
    csv.header({"t_gamma", "rate_g", "rate_c", "diff"});
    std::vector<double> tg, rg, rc;
    for (const auto& row : rep.rows) {
        csv.row({row.t * G, row.rateG, row.rateC, row.diff});
        tg.push_back(row.t * G);
        rg.push_back(row.rateG);
        rc.push_back(row.rateC);
    }
    csv.close();
    write_svg(output_path(r.outDir, "detect.svg"), "detector excitation rate", "t Gamma", "rate",
              {{"G only", tg, rg}, {"G + <D>", tg, rc}});
    log << "max |C - G| / max |G| after 2|x|: " << rep.maxRatio << '\n';
    return kOk;
}

std::vector<CheckResult> run_validation(const Resolved& r, std::ostream& log) {
    const int count = static_cast<int>(r.option("count", 1600));
    const double span = r.option("span", 200);
    OracleOptions opt;
    opt.n2HalfWidthGamma = r.option("n2_half_width", 25);
    DipoleParams p = DipoleParams::from_rate(r.omega0Ratio, 1.0, kDipoleAxis);
    std::vector<CheckResult> out;
    auto add = [&](CheckResult c) {
        log << (c.pass ? "  pass  " : "  FAIL  ") << c.name << ": " << c.measured << " (tolerance " << c.tolerance
            << ")" << (c.note.empty() ? "" : "  " + c.note) << '\n';
        out.push_back(std::move(c));
    };
    auto guard = [&](const std::string& name, double tol, const std::function<double()>& f) {
        try {
            double m = f();
            add({name, m, tol, m <= tol, ""});
        } catch (const std::exception& e) {
            add({name, NAN, tol, false, e.what()});
        }
    };

    ModeGrid grid;
    try {
        grid = build_grid(p, count, span, SpectralDensity::Flat, GridPolicy::Permissive);
    } catch (const std::exception& e) {
        throw UsageError(std::string("validate: ") + e.what());
    }

    guard("norm_drift", 1e-8, [&] {
        OracleOptions o = opt;
        o.normDriftTol = 1;
        auto s = propagate(SectorState::excited(grid), grid, p, 3.0, max_oracle_step(grid), o);
        return std::abs(s.norm2_n1() - 1);
    });
    guard("sigma_z_max_abs_err", 0.03, [&] {
        std::vector<double> t;
        for (int i = 0; i <= 60; ++i) t.push_back(0.05 * i);
        auto z = oracle_sigma_z_series(t, grid, p, opt);
        double e = 0;
        for (std::size_t i = 0; i < t.size(); ++i) e = std::max(e, std::abs(z[i] - sigma_z_expect(t[i], p)));
        return e;
    });
    guard("plus_minus_rel_err", 0.05, [&] {
        cplx o = oracle_two_time(AtomCorrKind::PlusMinus, 0.5, 1.0, grid, p, opt);
        cplx e = corr_plus_minus(0.5, 1.0, p);
        return std::abs(o - e) / std::abs(e);
    });
    guard("minus_plus_rel_err", 0.05, [&] {
        double worst = 0;
        for (auto [u, v] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{1.5, 2.0}}) {
            cplx o = oracle_two_time(AtomCorrKind::MinusPlus, u, v, grid, p, opt);
            cplx e = corr_minus_plus(u, v, p);
            worst = std::max(worst, std::abs(o - e) / std::abs(e));
        }
        return worst;
    });
    guard("bath_mass_max_dev", 0.05, [&] {
        double dev = 0;
        for (int i = 0; i <= 200; ++i) dev = std::max(dev, std::abs(bath_kernel_mass(grid, 1 + 0.01 * i) - 1));
        return dev;
    });
    guard("markov_kernel_rel_err", 0.01, [&] {
        double worst = 0;
        for (int sign : {+1, -1}) {
            MarkovKernelOptions mo;
            mo.sign = sign;
            auto rep = markov_kernel_check([](double) { return 1.0; }, 0.3, 0.5, p, mo);
            worst = std::max({worst, rep.relError, std::abs(rep.mass / (2 * kPi) - 1)});
        }
        return worst;
    });
    guard("angular_reduction_max_err", 1e-10, [&] {
        auto rep = angular_reduction_check();
        return std::max(rep.maxElementError, rep.maxTraceError);
    });
    guard("endpoint_half_weight_rel_err", 0.01, [&] {
        auto f = [](double t) { return 2 + std::cos(t); };
        return std::abs(endpoint_half_weight(f, 3.0, 400) / (0.5 * f(3.0)) - 1);
    });
    return out;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    Defaults d;
    d.omega0Ratio = 1000;
    Resolved r = resolve(cfg, "validate", d);
    log << "validate: count = " << r.option("count", 1600) << ", span = " << r.option("span", 200)
        << " Gamma, w0 = " << r.omega0Ratio << " Gamma\n";
    auto checks = run_validation(r, log);
    bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    CsvWriter csv(output_path(r.outDir, "validate.csv"));
    write_header(csv, r, {{"oracle_units", "Gamma = 1"}, {"result", ok ? "pass" : "fail"}});
    csv.header({"check", "measured", "tolerance", "pass", "note"});
    for (const auto& c : checks)
        csv.row_text({c.name, fmt_double(c.measured), fmt_double(c.tolerance), c.pass ? "1" : "0", c.note});
    csv.close();
    log << (ok ? "all checks passed" : "validation FAILED") << '\n';
    return ok ? kOk : kValidation;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ResolutionError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace advwave::app
