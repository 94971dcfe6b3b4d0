#include "advwave/photodetect.hpp"

#include <algorithm>

#include "advwave/correlations.hpp"
#include "advwave/kinetics.hpp"

namespace advwave {

DetectorConfig DetectorConfig::identical(const Vec3& position, const DipoleParams& p) {
    DetectorConfig c;
    c.position = position;
    c.dipole = p.dvec;
    c.sourceParams = p;
    return c;
}

namespace {

double rate(double t, const DetectorConfig& cfg, bool withAdvanced) {
    if (!(t >= 0)) throw std::invalid_argument("detection rate: t must be non-negative");
    const DipoleParams& p = cfg.sourceParams;
    CorrKernel k(FieldKind::Electric, FieldKind::Electric, cfg.position, cfg.position, p);
    double r = norm(cfg.position);
    if (t < r) return 0;
    const Vec3& d = cfg.dipole;
    auto f = [&](double tp) {
        cplx v = k.glauber_contract(d, d, t, tp);
        if (withAdvanced) v += k.delta_contract(d, d, t, tp);
        return v * std::polar(1.0, -p.omega0 * (t - tp));
    };
    std::vector<double> cuts{0.0, r, t - 2 * r, t};
    std::sort(cuts.begin(), cuts.end());
    double hmax = max_time_step(p);
    cplx sum{};
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        double a = std::max(0.0, cuts[s]), b = cuts[s + 1];
        if (!(b > a)) continue;
        long n = std::max<long>(2, static_cast<long>(std::ceil((b - a) / hmax)));
        if (n % 2) ++n;
        double h = (b - a) / static_cast<double>(n);
        // One-sided limits at the segment ends keep jumps of the gates out.
        double ea = a + 1e-9 * h, eb = b - 1e-9 * h;
        cplx part = (f(ea) + f(eb)) / 3.0;
        for (long i = 1; i < n; ++i) part += (i % 2 ? 4.0 / 3 : 2.0 / 3) * f(a + h * static_cast<double>(i));
        sum += part * h;
    }
    return 2 * sum.real();
}

}  // namespace

double detection_rate_G(double t, const DetectorConfig& cfg) { return rate(t, cfg, false); }
double detection_rate_C(double t, const DetectorConfig& cfg) { return rate(t, cfg, true); }

SuppressionReport suppression_report(const DetectorConfig& cfg, const std::vector<double>& tGrid, Exec exec) {
    SuppressionReport rep;
    rep.rows.resize(tGrid.size());
    const long n = static_cast<long>(tGrid.size());
    auto fill = [&](long i) {
        RateRow& row = rep.rows[static_cast<std::size_t>(i)];
        row.t = tGrid[static_cast<std::size_t>(i)];
        row.rateG = detection_rate_G(row.t, cfg);
        row.rateC = detection_rate_C(row.t, cfg);
        row.diff = row.rateC - row.rateG;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(parallel_threads())
        for (long i = 0; i < n; ++i) fill(i);
    } else {
        for (long i = 0; i < n; ++i) fill(i);
    }
    double r = norm(cfg.position);
    for (const auto& row : rep.rows) {
        rep.maxRateG = std::max(rep.maxRateG, std::abs(row.rateG));
        if (row.t >= 2 * r) rep.maxAbsDiff = std::max(rep.maxAbsDiff, std::abs(row.diff));
    }
    rep.maxRatio = rep.maxRateG > 0 ? rep.maxAbsDiff / rep.maxRateG : 0;
    return rep;
}

}  // namespace advwave
