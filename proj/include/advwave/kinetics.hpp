// Momentum and position dispersion of a static test charge near the dipole.
//
// The charge sits at r0 (with zero mean momentum) in the radiation zone of
// the source. Diffusion rates are reported scaled by the normalisation
//   N = ((Gamma/2)^2 + w0^2) / (q^2 |E_rad(r0)|^2).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advwave/core.hpp"
#include "advwave/correlations.hpp"
#include "advwave/parallel.hpp"

namespace advwave {

struct ChargeParams {
    double q = 1;
    double m = 1;
    Vec3 r0{1, 0, 0};
    Vec3 p0{};

    /// Throws if p0 != 0 or |r0| = 0.
    void validate() const;
    /// Non-empty when |r0| w0 < 10.
    std::optional<std::string> radiation_zone_warning(const DipoleParams& p) const;
};

double norm_constant(const DipoleParams& p, const ChargeParams& c);

/// Source-field part of d/dt <dp^2>:
/// (2 th(t_r)/N) [e^{-G t_r/2}(G cos w0 t_r + 2 w0 sin w0 t_r) - G e^{-G t_r}], t_r = t - r0.
double momdiff_source(double t, const DipoleParams& p, const ChargeParams& c);

/// Vacuum-source (advanced-wave) part, non-zero from t = 2 r0:
/// (th(t_r - r0)/N) [G(2e^{-G t_r} + 1)
///   - e^{-G t/2}(G(e^{G r0} + 2) cos w0(t - 2r0) - 2 w0 (e^{G r0} - 2) sin w0(t - 2r0))].
double momdiff_vacsource(double t, const DipoleParams& p, const ChargeParams& c);

enum class DiffusionPart { Source, VacSource };

/// q^2 * 2 Re int_0^t K(t, r0 | t', r0) dt' with K the G trace (Source) or the
/// <D> trace (VacSource), by adaptive Romberg quadrature split at the gates.
/// With CoeffMode::Radiative this reproduces the two closed forms above; the
/// Full mode keeps the near-zone terms and has no closed form.
double momdiff_numeric(double t, const DipoleParams& p, const ChargeParams& c, DiffusionPart part,
                       CoeffMode mode = CoeffMode::Radiative, double rtol = 1e-12);

struct DiffusionCurve {
    std::vector<double> times;
    std::vector<double> dSource;   // N * source rate
    std::vector<double> dVacS;     // N * vacuum-source rate
    std::vector<double> cumSource;
    std::vector<double> cumVacS;
    std::vector<double> cumTotal;
    double normConstant = 0;
    double gamma = 0;
};

/// Minimum number of samples per optical period 2 pi / w0.
inline constexpr int kPointsPerPeriod = 40;

/// Largest grid step accepted by dispersion_change and posdisp_change.
double max_time_step(const DipoleParams& p);

/// Rates and their running integrals on a grid starting at 0. The running
/// integral is the trapezoid rule with one Richardson step (piecewise
/// quadratic through consecutive node triples), restarted at the gates r0 and
/// 2 r0 where the rates switch on. Steps above max_time_step throw
/// ResolutionError.
DiffusionCurve dispersion_change(const std::vector<double>& tGrid, const DipoleParams& p, const ChargeParams& c,
                                 Exec exec = Exec::Parallel);

/// Uniform grid [0, tmax] fine enough for dispersion_change with at least
/// `minPoints` samples.
std::vector<double> dispersion_grid(double tmax, const DipoleParams& p, int minPoints = 2);

enum class FitSeries { Total, Source, VacSource };

struct LineFit {
    double slope = 0;
    double intercept = 0;
};

/// Least-squares line through the chosen cumulative series over [t1, t2].
/// Requires t1 >= 5/Gamma, t2 - t1 >= 2/Gamma and the window inside the grid.
LineFit longtime_fit(const DiffusionCurve& curve, double t1, double t2, FitSeries series = FitSeries::Total);

struct PosDispOptions {
    int pointsPerPeriod = kPointsPerPeriod;
    CoeffMode mode = CoeffMode::Radiative;
    Exec exec = Exec::Parallel;
};

struct PosDispResult {
    double freePart = 0;    // t^2 dp0 / (2 m^2)
    double dipolePart = 0;  // (q^2/m^2) 2 Re int int (t-t3)(t-t4) C(t3,r0|t4,r0)
    double total() const { return freePart + dipolePart; }
};

/// Position-dispersion change. The four-fold time integral collapses to
///   int_0^t dt1 int_0^t1 dt3 int_0^t dt2 int_0^t2 dt4 K(t3,t4)
///     = int_0^t int_0^t (t - t3)(t - t4) K(t3, t4) dt3 dt4
/// because int_{t3}^t dt1 = t - t3 (swap the order of the t1, t3 integrals).
/// The remaining double integral is split along the gates of G and <D> and
/// evaluated with iterated trapezoid-plus-Richardson rules, O(n^2) work.
PosDispResult posdisp_change(double t, const DipoleParams& p, const ChargeParams& c, double deltaP0,
                             const PosDispOptions& opt = {});

}  // namespace advwave
