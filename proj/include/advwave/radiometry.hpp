// Radiated power: perturbative multi-level sums and the exact two-level
// time dependence, plus a sphere quadrature for angular integrals.
#pragma once

#include <functional>
#include <optional>

#include "advwave/core.hpp"
#include "advwave/fieldcoeffs.hpp"
#include "advwave/parallel.hpp"

namespace advwave {

struct PowerBreakdown {
    double pG = 0;
    double pS = 0;
    double pVacS = 0;
    double pTotal = 0;
    std::optional<double> t;  // set for the time-dependent two-level curves
};

/// Gamma_em = w_em^3 |d_em|^2 / (3 pi); requires w_em > 0.
double spont_rate(const LevelScheme& scheme, int e, int m);

double total_power_pert(const LevelScheme& scheme, int e);      // sum_{m<e} w Gamma
double glauber_power_pert(const LevelScheme& scheme, int e);    // half of the above
double source_power_pert(const LevelScheme& scheme, int e);     // 1/2 sum over all m of w^4 |d|^2 / 3pi
double vacsource_power_pert(const LevelScheme& scheme, int e);  // 1/2 sum over all m of sgn(w) w^4 |d|^2 / 3pi
PowerBreakdown power_breakdown_pert(const LevelScheme& scheme, int e);

/// Per-direction perturbative intensities at distance r along xhat.
/// Glauber: sum over m < e. Source: all m. Vacuum-source: all m with sgn(w_em).
double glauber_intensity_pert(const LevelScheme& scheme, int e, const Vec3& xhat, double r);
double source_intensity_pert(const LevelScheme& scheme, int e, const Vec3& xhat, double r);
double vacsource_intensity_pert(const LevelScheme& scheme, int e, const Vec3& xhat, double r);

/// Two-level powers through a sphere of radius x_probe at time t.
/// All components are zero when t - x_probe < 0.
PowerBreakdown power_curves_2lvl(double t, double x_probe, const DipoleParams& p);

/// [w0^2/(4 pi r)]^2 [d - n(n.d)]^2 e^{-Gamma t_r} th(t_r).
double intensity_trace_2lvl(double t, const Vec3& x, const DipoleParams& p);
/// Same prefactor times (1 - e^{-Gamma t_r}) th(t_r).
double antinormal_source_trace(double t, const Vec3& x, const DipoleParams& p);

/// radius^2 * integral over directions of f(n). Gauss-Legendre in cos(theta)
/// with `order` nodes times a 2*order-point trapezoid in phi. order >= 8.
double sphere_integrate(const std::function<double(const Vec3&)>& f, double radius, int order,
                        Exec exec = Exec::Serial);

}  // namespace advwave
