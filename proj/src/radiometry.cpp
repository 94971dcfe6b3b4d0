#include "advwave/radiometry.hpp"

#include <limits>
#include <vector>

#include "advwave/quadrature.hpp"

namespace advwave {

namespace {

// w^4 |d|^2 / (3 pi): w * Gamma with Gamma carrying the sign of w^3.
double signed_weight(double w, const Vec3& d) { return w * w * w * w * norm2(d) / (3 * kPi); }

void check_level(const LevelScheme& s, int e) {
    if (e < 0 || e >= s.size()) throw std::out_of_range("level index out of range");
}

double transverse2(const Vec3& d, const Vec3& n) {
    Vec3 t = d - dot(n, d) * n;
    return norm2(t);
}

}  // namespace

double spont_rate(const LevelScheme& s, int e, int m) {
    check_level(s, e);
    check_level(s, m);
    double w = s.omega(e, m);
    if (!(w > 0)) throw std::domain_error("spont_rate: transition must go downward (w_em > 0)");
    return w * w * w * norm2(s.dipole(e, m)) / (3 * kPi);
}

double total_power_pert(const LevelScheme& s, int e) {
    check_level(s, e);
    double sum = 0;
    for (int m = 0; m < s.size(); ++m)
        if (m != e && s.omega(e, m) > 0) sum += signed_weight(s.omega(e, m), s.dipole(e, m));
    return sum;
}

double glauber_power_pert(const LevelScheme& s, int e) { return 0.5 * total_power_pert(s, e); }

double source_power_pert(const LevelScheme& s, int e) {
    check_level(s, e);
    double sum = 0;
    for (int m = 0; m < s.size(); ++m)
        if (m != e) sum += signed_weight(s.omega(e, m), s.dipole(e, m));
    return 0.5 * sum;
}

double vacsource_power_pert(const LevelScheme& s, int e) {
    check_level(s, e);
    double sum = 0;
    for (int m = 0; m < s.size(); ++m) {
        if (m == e) continue;
        double w = s.omega(e, m);
        double sg = w > 0 ? 1.0 : (w < 0 ? -1.0 : 0.0);
        sum += sg * signed_weight(w, s.dipole(e, m));
    }
    return 0.5 * sum;
}

PowerBreakdown power_breakdown_pert(const LevelScheme& s, int e) {
    PowerBreakdown b;
    b.pG = glauber_power_pert(s, e);
    b.pS = source_power_pert(s, e);
    b.pVacS = vacsource_power_pert(s, e);
    b.pTotal = total_power_pert(s, e);
    return b;
}

namespace {

template <class Select>
double intensity_sum(const LevelScheme& s, int e, const Vec3& xhat, double r, Select weight) {
    check_level(s, e);
    if (!(r > 0)) throw std::domain_error("intensity: radius must be positive");
    Vec3 n = xhat / norm(xhat);
    double sum = 0;
    for (int m = 0; m < s.size(); ++m) {
        if (m == e) continue;
        double w = s.omega(e, m);
        sum += weight(w) * w * w * w * w * transverse2(s.dipole(e, m), n);
    }
    double f = 1 / (4 * kPi * r);
    return f * f * sum;
}

}  // namespace

double glauber_intensity_pert(const LevelScheme& s, int e, const Vec3& xhat, double r) {
    return intensity_sum(s, e, xhat, r, [](double w) { return w > 0 ? 1.0 : 0.0; });
}

double source_intensity_pert(const LevelScheme& s, int e, const Vec3& xhat, double r) {
    return intensity_sum(s, e, xhat, r, [](double) { return 1.0; });
}

double vacsource_intensity_pert(const LevelScheme& s, int e, const Vec3& xhat, double r) {
    return intensity_sum(s, e, xhat, r, [](double w) { return w > 0 ? 1.0 : (w < 0 ? -1.0 : 0.0); });
}

PowerBreakdown power_curves_2lvl(double t, double x_probe, const DipoleParams& p) {
    PowerBreakdown b;
    b.t = t;
    double tr = t - x_probe;
    if (tr < 0) return b;
    double P = p.omega0 * p.gamma;
    double decay = std::exp(-p.gamma * tr);
    b.pG = 0.5 * P * decay;
    b.pS = 0.5 * P;
    b.pVacS = P * (decay - 0.5);
    b.pTotal = P * decay;
    return b;
}

namespace {

double radiative_prefactor(const Vec3& x, const DipoleParams& p) {
    double r = norm(x);
    if (!(r > 0)) throw std::domain_error("intensity: singular at x = 0");
    double f = p.omega0 * p.omega0 / (4 * kPi * r);
    return f * f * transverse2(p.dvec, x / r);
}

}  // namespace

double intensity_trace_2lvl(double t, const Vec3& x, const DipoleParams& p) {
    double pre = radiative_prefactor(x, p);
    double tr = t - norm(x);
    return tr < 0 ? 0.0 : pre * std::exp(-p.gamma * tr);
}

double antinormal_source_trace(double t, const Vec3& x, const DipoleParams& p) {
    double pre = radiative_prefactor(x, p);
    double tr = t - norm(x);
    return tr < 0 ? 0.0 : -pre * std::expm1(-p.gamma * tr);
}

double sphere_integrate(const std::function<double(const Vec3&)>& f, double radius, int order, Exec exec) {
    if (order < 8) throw std::invalid_argument("sphere_integrate: order >= 8 required");
    const auto& g = quad::gauss_legendre(order);
    const int nphi = 2 * order;
    const double dphi = 2 * kPi / nphi;
    std::vector<double> rows(order, 0.0);
    bool bad = false;

    auto row = [&](int i) {
        double mu = g.nodes[i];
        double st = std::sqrt(std::max(0.0, 1 - mu * mu));
        double s = 0;
        for (int j = 0; j < nphi; ++j) {
            double phi = j * dphi;
            double v = f(Vec3{st * std::cos(phi), st * std::sin(phi), mu});
            if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
            s += v;
        }
        return g.weights[i] * s * dphi;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(parallel_threads())
        for (int i = 0; i < order; ++i) rows[i] = row(i);
    } else {
        for (int i = 0; i < order; ++i) rows[i] = row(i);
    }
    double sum = 0;
    for (double r : rows) {
        if (!std::isfinite(r)) bad = true;
        sum += r;
    }
    if (bad) throw std::domain_error("sphere_integrate: integrand returned a non-finite sample");
    return radius * radius * sum;
}

}  // namespace advwave
