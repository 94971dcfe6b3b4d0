#include "advwave/kinetics.hpp"

#include <algorithm>
#include <sstream>

#include "advwave/fieldcoeffs.hpp"
#include "advwave/quadrature.hpp"

namespace advwave {

void ChargeParams::validate() const {
    if (norm(p0) != 0) throw std::invalid_argument("ChargeParams: initial mean momentum p0 must vanish");
    if (!(norm(r0) > 0)) throw std::invalid_argument("ChargeParams: |r0| must be positive");
    if (!(m > 0)) throw std::invalid_argument("ChargeParams: mass must be positive");
}

std::optional<std::string> ChargeParams::radiation_zone_warning(const DipoleParams& p) const {
    double kr = norm(r0) * p.omega0;
    if (kr >= 10) return std::nullopt;
    std::ostringstream os;
    os << "|r0| w0 = " << kr << " < 10: charge is not in the radiation zone";
    return os.str();
}

double norm_constant(const DipoleParams& p, const ChargeParams& c) {
    c.validate();
    double e2 = norm2(coeffs_two_level(c.r0, p).eRad);
    double scale = p.omega0 * p.omega0 * norm(p.dvec) / (4 * kPi * norm(c.r0));
    if (e2 <= 1e-24 * scale * scale)
        throw std::domain_error("norm_constant: radiative field vanishes at r0 (r0 parallel to the dipole)");
    if (c.q == 0) throw std::domain_error("norm_constant: q = 0 leaves the normalisation undefined");
    return (0.25 * p.gamma * p.gamma + p.omega0 * p.omega0) / (c.q * c.q * e2);
}

namespace {

// Closed forms multiplied by N.
double scaled_source(double t, double r0, const DipoleParams& p) {
    double tr = t - r0;
    if (tr < 0) return 0;
    double G = p.gamma, w = p.omega0;
    return 2 * (std::exp(-0.5 * G * tr) * (G * std::cos(w * tr) + 2 * w * std::sin(w * tr)) - G * std::exp(-G * tr));
}

double scaled_vacsource(double t, double r0, const DipoleParams& p) {
    double tr = t - r0;
    if (tr - r0 < 0) return 0;
    double G = p.gamma, w = p.omega0;
    double ph = w * (t - 2 * r0);
    double er = std::exp(G * r0);
    return G * (2 * std::exp(-G * tr) + 1) -
           std::exp(-0.5 * G * t) * (G * (er + 2) * std::cos(ph) - 2 * w * (er - 2) * std::sin(ph));
}

}  // namespace

double momdiff_source(double t, const DipoleParams& p, const ChargeParams& c) {
    if (!(t >= 0)) throw std::invalid_argument("momdiff_source: t must be non-negative");
    return scaled_source(t, norm(c.r0), p) / norm_constant(p, c);
}

double momdiff_vacsource(double t, const DipoleParams& p, const ChargeParams& c) {
    if (!(t >= 0)) throw std::invalid_argument("momdiff_vacsource: t must be non-negative");
    return scaled_vacsource(t, norm(c.r0), p) / norm_constant(p, c);
}

namespace {

// A gate evaluated at a computed endpoint can round to the closed side. Step
// inward by a few ulps until the integrand is live.
template <class F>
double live_endpoint(const F& f, double x, double toward) {
    for (int i = 0; i < 16 && f(x) == cplx{}; ++i) x = std::nextafter(x, toward);
    return x;
}

}  // namespace

double momdiff_numeric(double t, const DipoleParams& p, const ChargeParams& c, DiffusionPart part, CoeffMode mode,
                       double rtol) {
    if (!(t >= 0)) throw std::invalid_argument("momdiff_numeric: t must be non-negative");
    c.validate();
    double r0 = norm(c.r0);
    CorrKernel k(FieldKind::Electric, FieldKind::Electric, c.r0, c.r0, p, mode);
    std::function<cplx(double)> f;
    if (part == DiffusionPart::Source)
        f = [&](double tp) { return k.glauber_trace(t, tp); };
    else
        f = [&](double tp) { return k.delta_trace(t, tp); };
    double lo = part == DiffusionPart::Source ? std::min(r0, t) : 0.0;
    double hi = part == DiffusionPart::Source ? t : std::max(0.0, t - 2 * r0);
    if (hi > lo) {
        lo = live_endpoint(f, lo, hi);
        hi = live_endpoint(f, hi, lo);
    }
    // Panels of about one optical period keep Romberg away from aliasing.
    double period = 2 * kPi / p.omega0;
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / period)));
    std::vector<double> breaks;
    for (int i = 1; i < panels; ++i) breaks.push_back(lo + (hi - lo) * i / panels);
    cplx v = quad::romberg_piecewise(f, lo, hi, breaks, rtol, 1e-300);
    return c.q * c.q * 2 * v.real();
}

double max_time_step(const DipoleParams& p) { return 2 * kPi / p.omega0 / kPointsPerPeriod; }

std::vector<double> dispersion_grid(double tmax, const DipoleParams& p, int minPoints) {
    if (!(tmax > 0)) throw std::invalid_argument("dispersion_grid: tmax must be positive");
    long n = static_cast<long>(std::ceil(tmax / max_time_step(p) * (1 + 1e-12)));
    n = std::max<long>(n, std::max(1, minPoints - 1));
    std::vector<double> g(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = tmax * static_cast<double>(i) / n;
    return g;
}

namespace {

// Integral over [x1, x2] of the quadratic through (x0,f0), (x1,f1), (x2,f2) for
// the left (seg = 0: [x0, x1]) or right (seg = 1: [x1, x2]) interval.
double quad_segment(double x0, double x1, double x2, double f0, double f1, double f2, int seg) {
    double a = seg == 0 ? x0 : x1, b = seg == 0 ? x1 : x2;
    // Lagrange basis integrated exactly with 3-point Gauss on [a, b].
    static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
    double s = 0;
    for (int k = 0; k < 3; ++k) {
        double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
        double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
        double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
        double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
        s += gw[k] * (f0 * l0 + f1 * l1 + f2 * l2);
    }
    return 0.5 * (b - a) * s;
}

std::vector<double> running_integral_plain(const std::vector<double>& x, const std::vector<double>& f) {
    std::size_t n = x.size();
    std::vector<double> cum(n, 0.0);
    if (n < 2) return cum;
    if (n == 2) {
        cum[1] = 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
        return cum;
    }
    for (std::size_t i = 1; i < n; ++i) {
        double seg;
        if (i % 2 == 1 && i + 1 < n)
            seg = quad_segment(x[i - 1], x[i], x[i + 1], f[i - 1], f[i], f[i + 1], 0);
        else
            seg = quad_segment(x[i - 2], x[i - 1], x[i], f[i - 2], f[i - 1], f[i], 1);
        cum[i] = cum[i - 1] + seg;
    }
    return cum;
}

// The rate vanishes below `gate` and has a kink there. Interpolating across
// the kink costs accuracy, so the gate itself becomes the first node.
std::vector<double> running_integral(const std::vector<double>& x, const std::vector<double>& f, double gate,
                                     double fGate) {
    std::size_t n = x.size();
    std::vector<double> cum(n, 0.0);
    std::size_t j0 = 0;
    while (j0 < n && x[j0] <= gate) ++j0;
    if (j0 == n) return cum;
    std::vector<double> z{gate}, fz{fGate};
    z.insert(z.end(), x.begin() + static_cast<long>(j0), x.end());
    fz.insert(fz.end(), f.begin() + static_cast<long>(j0), f.end());
    auto cz = running_integral_plain(z, fz);
    for (std::size_t i = j0; i < n; ++i) cum[i] = cz[i - j0 + 1];
    return cum;
}

}  // namespace

DiffusionCurve dispersion_change(const std::vector<double>& tGrid, const DipoleParams& p, const ChargeParams& c,
                                 Exec exec) {
    if (tGrid.empty() || tGrid.front() != 0)
        throw std::invalid_argument("dispersion_change: grid must start at t = 0");
    double hmax = max_time_step(p);
    for (std::size_t i = 1; i < tGrid.size(); ++i) {
        double h = tGrid[i] - tGrid[i - 1];
        if (!(h > 0)) throw std::invalid_argument("dispersion_change: grid must be strictly increasing");
        if (h > hmax * (1 + 1e-9)) {
            std::ostringstream os;
            os.precision(6);
            os << "dispersion_change: step " << h << " at t = " << tGrid[i - 1] << " exceeds the required maximum "
               << hmax << " (" << kPointsPerPeriod << " points per period 2pi/w0)";
            throw ResolutionError(os.str());
        }
    }
    DiffusionCurve cv;
    cv.normConstant = norm_constant(p, c);
    cv.gamma = p.gamma;
    cv.times = tGrid;
    const std::size_t n = tGrid.size();
    cv.dSource.resize(n);
    cv.dVacS.resize(n);
    double r0 = norm(c.r0);
    const long nl = static_cast<long>(n);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(parallel_threads())
        for (long i = 0; i < nl; ++i) {
            cv.dSource[i] = scaled_source(tGrid[i], r0, p);
            cv.dVacS[i] = scaled_vacsource(tGrid[i], r0, p);
        }
    } else {
        for (long i = 0; i < nl; ++i) {
            cv.dSource[i] = scaled_source(tGrid[i], r0, p);
            cv.dVacS[i] = scaled_vacsource(tGrid[i], r0, p);
        }
    }
    cv.cumSource = running_integral(tGrid, cv.dSource, r0, scaled_source(r0, r0, p));
    cv.cumVacS = running_integral(tGrid, cv.dVacS, 2 * r0, scaled_vacsource(2 * r0, r0, p));
    cv.cumTotal.resize(n);
    for (std::size_t i = 0; i < n; ++i) cv.cumTotal[i] = cv.cumSource[i] + cv.cumVacS[i];
    return cv;
}

LineFit longtime_fit(const DiffusionCurve& cv, double t1, double t2, FitSeries series) {
    if (cv.times.empty()) throw std::invalid_argument("longtime_fit: empty curve");
    double G = cv.gamma;
    if (t1 * G < 5 - 1e-9) throw std::invalid_argument("longtime_fit: window must start at t >= 5/Gamma");
    if ((t2 - t1) * G < 2 - 1e-9) throw std::invalid_argument("longtime_fit: window shorter than 2/Gamma");
    double eps = 1e-9 * std::max(1.0, std::abs(cv.times.back()));
    if (t1 < cv.times.front() - eps || t2 > cv.times.back() + eps)
        throw std::invalid_argument("longtime_fit: window outside the grid");
    const auto& y = series == FitSeries::Total ? cv.cumTotal
                    : series == FitSeries::Source ? cv.cumSource
                                                  : cv.cumVacS;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < cv.times.size(); ++i) {
        double t = cv.times[i];
        if (t < t1 - eps || t > t2 + eps) continue;
        sx += t;
        sy += y[i];
        ++n;
    }
    if (n < 2) throw std::invalid_argument("longtime_fit: fewer than two samples in the window");
    double mx = sx / n, my = sy / n;
    for (std::size_t i = 0; i < cv.times.size(); ++i) {
        double t = cv.times[i];
        if (t < t1 - eps || t > t2 + eps) continue;
        sxx += (t - mx) * (t - mx);
        sxy += (t - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

namespace {

struct Grid1 {
    double a, h;
    long n;  // intervals, even
    double at(long i) const { return a + h * static_cast<double>(i); }
};

Grid1 make_grid(double a, double b, double hmax) {
    long n = std::max<long>(2, static_cast<long>(std::ceil((b - a) / hmax)));
    if (n % 2) ++n;
    return {a, (b - a) / static_cast<double>(n), n};
}

// Simpson weights on an even grid: trapezoid with one Richardson step.
inline double simpson_w(long i, long n) {
    if (i == 0 || i == n) return 1.0 / 3;
    return i % 2 ? 4.0 / 3 : 2.0 / 3;
}

template <class Row>
cplx row_sum(long rows, Row&& row, Exec exec) {
    double re = 0, im = 0;
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : re, im) num_threads(parallel_threads())
        for (long i = 0; i < rows; ++i) {
            cplx v = row(i);
            re += v.real();
            im += v.imag();
        }
    } else {
        for (long i = 0; i < rows; ++i) {
            cplx v = row(i);
            re += v.real();
            im += v.imag();
        }
    }
    return {re, im};
}

}  // namespace

PosDispResult posdisp_change(double t, const DipoleParams& p, const ChargeParams& c, double deltaP0,
                             const PosDispOptions& opt) {
    if (!(t >= 0)) throw std::invalid_argument("posdisp_change: t must be non-negative");
    if (!(deltaP0 >= 0)) throw std::invalid_argument("posdisp_change: deltaP0 must be non-negative");
    if (opt.pointsPerPeriod < kPointsPerPeriod) {
        std::ostringstream os;
        os << "posdisp_change: " << opt.pointsPerPeriod << " points per period requested, at least "
           << kPointsPerPeriod << " required";
        throw ResolutionError(os.str());
    }
    c.validate();
    PosDispResult res;
    res.freePart = t * t * deltaP0 / (2 * c.m * c.m);
    if (c.q == 0) return res;
    double r0 = norm(c.r0);
    if (t <= r0) return res;

    double hmax = 2 * kPi / p.omega0 / opt.pointsPerPeriod;
    CorrKernel k(FieldKind::Electric, FieldKind::Electric, c.r0, c.r0, p, opt.mode);
    auto w = [t](double s) { return t - s; };

    // G: support [r0, t]^2.
    Grid1 g = make_grid(r0, t, hmax);
    cplx IG = row_sum(
        g.n + 1,
        [&](long i) {
            double t3 = g.at(i);
            cplx s{};
            for (long j = 0; j <= g.n; ++j) {
                double t4 = g.at(j);
                s += simpson_w(j, g.n) * w(t4) * k.glauber_trace(t3, t4);
            }
            return simpson_w(i, g.n) * w(t3) * s;
        },
        opt.exec) * (g.h * g.h);

    // <D>: first term lives on t4 >= t3 + 2 r0, second on t3 >= t4 + 2 r0.
    cplx ID{};
    if (t > 2 * r0) {
        Grid1 outer = make_grid(2 * r0, t, hmax);
        auto inner = [&](double tOut, bool firstTerm) {
            double L = tOut - 2 * r0;
            if (L <= 0) return cplx{};
            Grid1 in = make_grid(0, L, hmax);
            auto factor = [&](double tin) {
                return firstTerm ? k.delta_first_factor(tin, tOut) : k.delta_second_factor(tOut, tin);
            };
            double last = live_endpoint(factor, in.at(in.n), 0.0);
            cplx s{};
            for (long j = 0; j <= in.n; ++j) {
                double tin = j == in.n ? last : in.at(j);
                cplx v = factor(tin);
                s += simpson_w(j, in.n) * w(tin) * v;
            }
            return s * in.h;
        };
        cplx trXY{};
        for (int i = 0; i < 3; ++i) trXY += k.X()[i] * k.Y()[i];
        cplx first = row_sum(
            outer.n + 1,
            [&](long i) { return simpson_w(i, outer.n) * w(outer.at(i)) * inner(outer.at(i), true); }, opt.exec);
        cplx second = row_sum(
            outer.n + 1,
            [&](long i) { return simpson_w(i, outer.n) * w(outer.at(i)) * inner(outer.at(i), false); }, opt.exec);
        ID = (first * trXY + second * std::conj(trXY)) * outer.h;
    }
    res.dipolePart = c.q * c.q / (c.m * c.m) * 2 * (IG + ID).real();
    return res;
}

}  // namespace advwave
