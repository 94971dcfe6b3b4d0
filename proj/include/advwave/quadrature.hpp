// One-dimensional quadrature helpers shared by the modules.
#pragma once

#include <functional>
#include <vector>

#include "advwave/core.hpp"

namespace advwave::quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n. Cached per n.
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class T, class F>
T gauss_panels(F&& f, double a, double b, int panels, int order) {
    const GaussRule& g = gauss_legendre(order);
    double h = (b - a) / panels;
    T sum{};
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        T part{};
        for (int k = 0; k < order; ++k) part += g.weights[k] * f(mid + 0.5 * h * g.nodes[k]);
        sum += part * (0.5 * h);
    }
    return sum;
}

/// Trapezoid rule on n equal steps combined with the half-step rule by one
/// Richardson step: (4 T(h/2) - T(h)) / 3. Uses 2n + 1 samples.
template <class T, class F>
T trapezoid_richardson(F&& f, double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("trapezoid_richardson: n >= 1 required");
    if (a == b) return T{};
    double h = (b - a) / (2.0 * n);
    T ends = 0.5 * (f(a) + f(b));
    T even{}, odd{};
    for (int k = 1; k < 2 * n; ++k) (k % 2 ? odd : even) += f(a + k * h);
    T coarse = (ends + even) * (2 * h);
    T fine = (ends + even + odd) * h;
    return (4.0 * fine - coarse) / 3.0;
}

/// Romberg integration with tableau up to `maxLevel` halvings; stops when two
/// successive diagonal entries agree to `rtol` relative (or `atol` absolute).
double romberg(const std::function<double(double)>& f, double a, double b, double rtol = 1e-12,
               double atol = 0, int maxLevel = 22);
cplx romberg(const std::function<cplx(double)>& f, double a, double b, double rtol = 1e-12,
             double atol = 0, int maxLevel = 22);

/// Piecewise Romberg over [a, b] split at the given interior breakpoints.
cplx romberg_piecewise(const std::function<cplx(double)>& f, double a, double b,
                       std::vector<double> breaks, double rtol = 1e-12, double atol = 0);

}  // namespace advwave::quad
