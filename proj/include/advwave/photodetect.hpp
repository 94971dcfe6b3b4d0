// Excitation rate of an identical two-level detector placed at x.
//
//   rate(t) = 2 Re sum_ij d_i d_j int_0^t K_ij(t, x | t', x) e^{-i w0 (t - t')} dt'
//
// with K = G (Glauber) or K = C = G + <D>. The integral is taken with the
// trapezoid rule plus one Richardson step, at least 40 samples per optical
// period, split at the gate times |x| and t - 2|x|.
#pragma once

#include <vector>

#include "advwave/core.hpp"
#include "advwave/parallel.hpp"

namespace advwave {

struct DetectorConfig {
    Vec3 position{1, 0, 0};
    Vec3 dipole{0, 0, 1};
    DipoleParams sourceParams;

    /// Identical detector: d_d = d_s.
    static DetectorConfig identical(const Vec3& position, const DipoleParams& p);
};

double detection_rate_G(double t, const DetectorConfig& cfg);
double detection_rate_C(double t, const DetectorConfig& cfg);

struct RateRow {
    double t = 0;
    double rateG = 0;
    double rateC = 0;
    double diff = 0;  // rateC - rateG
};

struct SuppressionReport {
    std::vector<RateRow> rows;
    double maxRateG = 0;
    double maxAbsDiff = 0;
    /// max |rateC - rateG| / max |rateG|, over rows with t >= 2|x|.
    double maxRatio = 0;
};

SuppressionReport suppression_report(const DetectorConfig& cfg, const std::vector<double>& tGrid,
                                     Exec exec = Exec::Parallel);

}  // namespace advwave
