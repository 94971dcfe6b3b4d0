#include "advwave/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "advwave/fieldcoeffs.hpp"
#include "advwave/quadrature.hpp"

namespace advwave {

std::pair<int, int> ModeGrid::window(double halfWidth) const {
    auto lo = std::lower_bound(freqs.begin(), freqs.end(), omega0 - halfWidth);
    auto hi = std::upper_bound(freqs.begin(), freqs.end(), omega0 + halfWidth);
    return {static_cast<int>(lo - freqs.begin()), static_cast<int>(hi - freqs.begin())};
}

ModeGrid build_grid(const DipoleParams& p, int count, double spanGamma, SpectralDensity density, GridPolicy policy) {
    if (policy == GridPolicy::Strict && (count < 200 || spanGamma < 50)) {
        std::ostringstream os;
        os << "build_grid: count = " << count << ", span = " << spanGamma
           << " Gamma; at least 200 modes over 50 Gamma are required";
        throw ResolutionError(os.str());
    }
    if (count < 2 || !(spanGamma > 0)) throw ResolutionError("build_grid: need count >= 2 and span > 0");
    ModeGrid g;
    g.count = count;
    g.omega0 = p.omega0;
    double W = 0.5 * spanGamma * p.gamma;
    g.omegaMin = p.omega0 - W;
    g.omegaMax = p.omega0 + W;
    g.spacing = 2 * W / count;
    if (density == SpectralDensity::Cubic && g.omegaMin <= 0)
        throw std::invalid_argument("build_grid: cubic density needs the band above zero frequency");
    g.freqs.resize(count);
    g.couplings.resize(count);
    double g2 = p.gamma * g.spacing / (2 * kPi);
    for (int k = 0; k < count; ++k) {
        double w = g.omegaMin + (k + 0.5) * g.spacing;
        g.freqs[k] = w;
        double scale = density == SpectralDensity::Cubic ? std::pow(w / p.omega0, 3) : 1.0;
        g.couplings[k] = std::sqrt(g2 * scale);
    }
    return g;
}

SectorState SectorState::excited(const ModeGrid& grid) {
    SectorState s;
    s.amp_e0 = 1;
    s.amp_g1.assign(grid.freqs.size(), cplx{});
    return s;
}

double SectorState::norm2_n1() const {
    double s = std::norm(amp_e0);
    for (const auto& c : amp_g1) s += std::norm(c);
    return s;
}

double SectorState::norm2_n2() const {
    double s = 0;
    for (const auto& c : amp_e1) s += std::norm(c);
    for (const auto& c : amp_g2) s += std::norm(c);
    return s;
}

double max_oracle_step(const ModeGrid& grid) { return 0.02 / grid.span(); }

namespace {

constexpr cplx I{0, 1};

inline std::size_t pair_index(int a, int b, int W) {
    // a <= b, rows packed: row a holds b = a .. W-1
    return static_cast<std::size_t>(a) * W - static_cast<std::size_t>(a) * (a - 1) / 2 + (b - a);
}

// y = -i H x in the rotating frame, for both sectors.
struct Rhs {
    const ModeGrid& grid;
    std::vector<double> det;  // w_k - w0
    int lo = 0, W = 0;
    Exec exec;

    void n1(const cplx& e, const std::vector<cplx>& g1, cplx& de, std::vector<cplx>& dg1) const {
        const int n = static_cast<int>(g1.size());
        cplx acc{};
        for (int k = 0; k < n; ++k) {
            acc += grid.couplings[k] * g1[k];
            dg1[k] = -I * (det[k] * g1[k] + grid.couplings[k] * e);
        }
        de = -I * acc;
    }

    void n2(const std::vector<cplx>& e1, const std::vector<cplx>& g2, std::vector<cplx>& de1,
            std::vector<cplx>& dg2) const {
        const int n = static_cast<int>(e1.size());
        const double sq2 = std::sqrt(2.0);
        const auto& g = grid.couplings;
        auto erow = [&](int k) {
            cplx acc = det[k] * e1[k];
            int a = k - lo;
            if (a >= 0 && a < W) {
                for (int b = 0; b < a; ++b) acc += g[lo + b] * g2[pair_index(b, a, W)];
                acc += sq2 * g[k] * g2[pair_index(a, a, W)];
                for (int b = a + 1; b < W; ++b) acc += g[lo + b] * g2[pair_index(a, b, W)];
            }
            de1[k] = -I * acc;
        };
        auto prow = [&](int a) {
            int ka = lo + a;
            std::size_t base = pair_index(a, a, W);
            dg2[base] = -I * (2 * det[ka] * g2[base] + sq2 * g[ka] * e1[ka]);
            for (int b = a + 1; b < W; ++b) {
                int kb = lo + b;
                std::size_t ix = base + (b - a);
                dg2[ix] = -I * ((det[ka] + det[kb]) * g2[ix] + g[kb] * e1[ka] + g[ka] * e1[kb]);
            }
        };
        if (exec == Exec::Parallel) {
#pragma omp parallel num_threads(parallel_threads())
            {
#pragma omp for schedule(static) nowait
                for (int k = 0; k < n; ++k) erow(k);
#pragma omp for schedule(dynamic, 8)
                for (int a = 0; a < W; ++a) prow(a);
            }
        } else {
            for (int k = 0; k < n; ++k) erow(k);
            for (int a = 0; a < W; ++a) prow(a);
        }
    }
};

void axpy(std::vector<cplx>& y, const std::vector<cplx>& x, const std::vector<cplx>& dx, double h, Exec exec) {
    const long n = static_cast<long>(y.size());
    if (exec == Exec::Parallel && n > 4096) {
#pragma omp parallel for schedule(static) num_threads(parallel_threads())
        for (long i = 0; i < n; ++i) y[i] = x[i] + h * dx[i];
    } else {
        for (long i = 0; i < n; ++i) y[i] = x[i] + h * dx[i];
    }
}

void rk_accumulate(std::vector<cplx>& x, const std::vector<cplx>& k1, const std::vector<cplx>& k2,
                   const std::vector<cplx>& k3, const std::vector<cplx>& k4, double h, Exec exec) {
    const long n = static_cast<long>(x.size());
    const double c = h / 6;
    if (exec == Exec::Parallel && n > 4096) {
#pragma omp parallel for schedule(static) num_threads(parallel_threads())
        for (long i = 0; i < n; ++i) x[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    } else {
        for (long i = 0; i < n; ++i) x[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace

SectorState propagate(SectorState s, const ModeGrid& grid, const DipoleParams& p, double tEnd, double dt,
                      const OracleOptions& opt) {
    (void)p;
    if (!(dt > 0)) throw std::invalid_argument("propagate: dt must be positive");
    if (dt > max_oracle_step(grid) * (1 + 1e-12)) {
        std::ostringstream os;
        os << "propagate: dt = " << dt << " exceeds 0.02/span = " << max_oracle_step(grid);
        throw std::invalid_argument(os.str());
    }
    if (tEnd < s.time) throw std::invalid_argument("propagate: tEnd precedes the state time");
    if (s.amp_g1.size() != grid.freqs.size()) throw std::invalid_argument("propagate: state does not match grid");
    const bool withN2 = s.has_n2();
    if (withN2 && (s.amp_e1.size() != grid.freqs.size() ||
                   s.amp_g2.size() != static_cast<std::size_t>(s.windowCount) * (s.windowCount + 1) / 2))
        throw std::invalid_argument("propagate: N = 2 sector does not match grid");
    if (tEnd == s.time) return s;

    Rhs rhs{grid, {}, s.windowLo, s.windowCount, opt.exec};
    rhs.det.resize(grid.freqs.size());
    for (std::size_t k = 0; k < grid.freqs.size(); ++k) rhs.det[k] = grid.freqs[k] - grid.omega0;

    long steps = static_cast<long>(std::ceil((tEnd - s.time) / dt * (1 - 1e-12)));
    steps = std::max(1L, steps);
    double h = (tEnd - s.time) / static_cast<double>(steps);
    double n1start = s.norm2_n1(), n2start = s.norm2_n2();

    const std::size_t M = grid.freqs.size();
    std::vector<cplx> g1k[4], g1tmp(M);
    cplx ek[4], etmp;
    for (auto& v : g1k) v.resize(M);
    std::vector<cplx> e1k[4], g2k[4], e1tmp, g2tmp;
    if (withN2) {
        for (int i = 0; i < 4; ++i) {
            e1k[i].resize(M);
            g2k[i].resize(s.amp_g2.size());
        }
        e1tmp.resize(M);
        g2tmp.resize(s.amp_g2.size());
    }

    for (long st = 0; st < steps; ++st) {
        // N = 1
        rhs.n1(s.amp_e0, s.amp_g1, ek[0], g1k[0]);
        etmp = s.amp_e0 + 0.5 * h * ek[0];
        for (std::size_t k = 0; k < M; ++k) g1tmp[k] = s.amp_g1[k] + 0.5 * h * g1k[0][k];
        rhs.n1(etmp, g1tmp, ek[1], g1k[1]);
        etmp = s.amp_e0 + 0.5 * h * ek[1];
        for (std::size_t k = 0; k < M; ++k) g1tmp[k] = s.amp_g1[k] + 0.5 * h * g1k[1][k];
        rhs.n1(etmp, g1tmp, ek[2], g1k[2]);
        etmp = s.amp_e0 + h * ek[2];
        for (std::size_t k = 0; k < M; ++k) g1tmp[k] = s.amp_g1[k] + h * g1k[2][k];
        rhs.n1(etmp, g1tmp, ek[3], g1k[3]);
        s.amp_e0 += h / 6 * (ek[0] + 2.0 * ek[1] + 2.0 * ek[2] + ek[3]);
        for (std::size_t k = 0; k < M; ++k)
            s.amp_g1[k] += h / 6 * (g1k[0][k] + 2.0 * g1k[1][k] + 2.0 * g1k[2][k] + g1k[3][k]);

        if (withN2) {
            rhs.n2(s.amp_e1, s.amp_g2, e1k[0], g2k[0]);
            axpy(e1tmp, s.amp_e1, e1k[0], 0.5 * h, opt.exec);
            axpy(g2tmp, s.amp_g2, g2k[0], 0.5 * h, opt.exec);
            rhs.n2(e1tmp, g2tmp, e1k[1], g2k[1]);
            axpy(e1tmp, s.amp_e1, e1k[1], 0.5 * h, opt.exec);
            axpy(g2tmp, s.amp_g2, g2k[1], 0.5 * h, opt.exec);
            rhs.n2(e1tmp, g2tmp, e1k[2], g2k[2]);
            axpy(e1tmp, s.amp_e1, e1k[2], h, opt.exec);
            axpy(g2tmp, s.amp_g2, g2k[2], h, opt.exec);
            rhs.n2(e1tmp, g2tmp, e1k[3], g2k[3]);
            rk_accumulate(s.amp_e1, e1k[0], e1k[1], e1k[2], e1k[3], h, opt.exec);
            rk_accumulate(s.amp_g2, g2k[0], g2k[1], g2k[2], g2k[3], h, opt.exec);
        }
    }
    s.time = tEnd;

    auto drift = [](double a, double b) { return b > 0 ? std::abs(a - b) / b : std::abs(a - b); };
    double d1 = drift(s.norm2_n1(), n1start);
    double d2 = withN2 ? drift(s.norm2_n2(), n2start) : 0.0;
    if (d1 > opt.normDriftTol || d2 > opt.normDriftTol) {
        std::ostringstream os;
        os << "propagate: relative norm drift " << std::max(d1, d2) << " exceeds " << opt.normDriftTol;
        throw NormDriftError(os.str());
    }
    return s;
}

std::vector<double> oracle_sigma_z_series(const std::vector<double>& times, const ModeGrid& grid,
                                          const DipoleParams& p, const OracleOptions& opt) {
    std::vector<double> out;
    out.reserve(times.size());
    SectorState s = SectorState::excited(grid);
    double dt = max_oracle_step(grid);
    for (double t : times) {
        if (t < s.time) throw std::invalid_argument("oracle_sigma_z_series: times must be ascending");
        s = propagate(std::move(s), grid, p, t, dt, opt);
        out.push_back(2 * std::norm(s.amp_e0) - 1);
    }
    return out;
}

double oracle_sigma_z(double t, const ModeGrid& grid, const DipoleParams& p, const OracleOptions& opt) {
    if (!(t >= 0)) throw std::invalid_argument("oracle_sigma_z: t must be non-negative");
    return oracle_sigma_z_series({t}, grid, p, opt).front();
}

namespace {

cplx plus_minus(double u, double v, const ModeGrid& grid, const DipoleParams& p, const OracleOptions& opt) {
    double dt = max_oracle_step(grid);
    SectorState s = propagate(SectorState::excited(grid), grid, p, std::min(u, v), dt, opt);
    cplx first = s.amp_e0;
    s = propagate(std::move(s), grid, p, std::max(u, v), dt, opt);
    cplx cu = u <= v ? first : s.amp_e0;
    cplx cv = u <= v ? s.amp_e0 : first;
    return std::conj(cu) * cv * std::polar(1.0, p.omega0 * (u - v));
}

cplx minus_plus(double u, double v, const ModeGrid& grid, const DipoleParams& p, const OracleOptions& opt) {
    double dt = max_oracle_step(grid);
    SectorState s = propagate(SectorState::excited(grid), grid, p, u, dt, opt);

    auto [lo, hi] = grid.window(opt.n2HalfWidthGamma * p.gamma);
    int W = hi - lo;
    double pairs = 0.5 * W * (W + 1.0);
    double bytes = (pairs + grid.freqs.size()) * sizeof(cplx) * 6;
    if (bytes > opt.memoryBudgetBytes) {
        double maxPairs = opt.memoryBudgetBytes / (sizeof(cplx) * 6);
        int maxW = static_cast<int>(std::floor((std::sqrt(8 * maxPairs + 1) - 1) / 2));
        int maxCount = static_cast<int>(std::floor(grid.count * static_cast<double>(maxW) / W));
        std::ostringstream os;
        os << "oracle_two_time: N = 2 window of " << W << " modes needs " << bytes / 1e6 << " MB (budget "
           << opt.memoryBudgetBytes / 1e6 << " MB); use count <= " << maxCount << " at this span";
        throw ResourceError(os.str());
    }
    // chi = sigma^+ psi(u): |g,k> -> |e,k>, |e,0> -> 0.
    s.amp_e1 = s.amp_g1;
    s.windowLo = lo;
    s.windowCount = W;
    s.amp_g2.assign(static_cast<std::size_t>(pairs), cplx{});
    if (u == 0 && v == 0) return 0.0;
    s = propagate(std::move(s), grid, p, v, dt, opt);
    cplx overlap{};
    for (std::size_t k = 0; k < grid.freqs.size(); ++k) overlap += std::conj(s.amp_e1[k]) * s.amp_g1[k];
    return overlap * std::polar(1.0, p.omega0 * (v - u));
}

}  // namespace

cplx oracle_two_time(AtomCorrKind kind, double u, double v, const ModeGrid& grid, const DipoleParams& p,
                     const OracleOptions& opt) {
    if (!(u >= 0) || !(v >= 0)) throw std::invalid_argument("oracle_two_time: times must be non-negative");
    switch (kind) {
        case AtomCorrKind::PopulationZ:
            return oracle_sigma_z(u, grid, p, opt);
        case AtomCorrKind::PlusMinus:
            return plus_minus(u, v, grid, p, opt);
        case AtomCorrKind::MinusPlus:
            if (u > v) throw std::domain_error("oracle_two_time: MinusPlus needs u <= v");
            return minus_plus(u, v, grid, p, opt);
        case AtomCorrKind::Commutator:
            if (u > v) throw std::domain_error("oracle_two_time: Commutator needs u <= v");
            return minus_plus(u, v, grid, p, opt) - plus_minus(v, u, grid, p, opt);
    }
    throw std::invalid_argument("oracle_two_time: unknown kind");
}

double bath_kernel_mass(const ModeGrid& grid, double T) {
    double s = 0;
    for (std::size_t k = 0; k < grid.freqs.size(); ++k) {
        double d = grid.freqs[k] - grid.omega0;
        double g2 = grid.couplings[k] * grid.couplings[k];
        s += g2 * (d == 0 ? T : std::sin(d * T) / d);
    }
    double gamma = 2 * kPi * grid.couplings[grid.count / 2] * grid.couplings[grid.count / 2] / grid.spacing;
    return 2 * s / gamma;
}

MarkovKernelReport markov_kernel_check(const std::function<double(double)>& f, double t_r, double t_a,
                                       const DipoleParams& p, const MarkovKernelOptions& opt) {
    MarkovKernelReport rep;
    const double w0 = p.omega0;
    rep.cutoff = opt.cutoffMultiple * w0;
    rep.testWidth = opt.widthOmega / w0;
    const double sig = rep.testWidth;
    const double centre = opt.centre < 0 ? t_r : opt.centre;
    // Spectrum of h is a Gaussian of width 1/sig around w0.
    if (rep.cutoff - w0 < 8 / sig || w0 < 8 / sig) {
        std::ostringstream os;
        os << "markov_kernel_check: cutoff " << rep.cutoff << " does not contain the test spectrum (need > "
           << w0 + 8 / sig << ")";
        throw ResolutionError(os.str());
    }
    auto h = [&](double t) {
        double x = (t - centre) / sig;
        return std::exp(-0.5 * x * x) * std::polar(1.0, -w0 * t);
    };
    // H(w) = int h(t') e^{i w t'} dt' by Gauss-Legendre over +-10 sigma.
    const double ta = centre - 10 * sig, tb = centre + 10 * sig;
    auto H = [&](double w) {
        return quad::gauss_panels<cplx>([&](double t) { return h(t) * std::polar(1.0, w * t); }, ta, tb,
                                         8 + static_cast<int>(std::abs(w - w0) * 20 * sig / 4), 12);
    };
    double sgn = opt.sign >= 0 ? 1.0 : -1.0;
    auto integrand = [&](double w) {
        cplx kern = std::polar(1.0, -w * t_r) + sgn * std::polar(1.0, -w * t_a);
        return f(w) * kern * H(w);
    };
    double maxPhase = std::max({std::abs(t_r), std::abs(t_a), std::abs(centre)}) + 10 * sig;
    int panels = 64 + static_cast<int>(rep.cutoff * maxPhase / 2);
    rep.action = quad::gauss_panels<cplx>(integrand, 0.0, rep.cutoff, panels, 16);
    rep.expected = 2 * kPi * f(w0) * (h(t_r) + sgn * h(t_a));
    rep.relError = std::abs(rep.action - rep.expected) / std::abs(rep.expected);
    rep.mass = std::abs(rep.action) / std::abs(h(centre));

    // |K(t')| around t_r: FWHM by bisection on the first half-maximum crossing.
    auto K = [&](double tp) {
        return quad::gauss_panels<cplx>(
            [&](double w) { return f(w) * std::polar(1.0, w * (tp - t_r)); }, 0.0, rep.cutoff,
            64 + static_cast<int>(rep.cutoff * std::abs(tp - t_r)), 16);
    };
    double peak = std::abs(K(t_r));
    double lo = t_r, hi = t_r + 4 * kPi / rep.cutoff;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (std::abs(K(mid)) > 0.5 * peak ? lo : hi) = mid;
    }
    rep.kernelWidth = 2 * (lo - t_r);
    return rep;
}

double endpoint_half_weight(const std::function<double(double)>& f, double t, double W) {
    if (!(t > 0) || !(W > 0)) throw std::invalid_argument("endpoint_half_weight: t and W must be positive");
    auto kern = [&](double tp) {
        double s = tp - t;
        double sinc = std::abs(W * s) < 1e-8 ? W / kPi : std::sin(W * s) / (kPi * s);
        return sinc * f(tp);
    };
    int panels = 32 + static_cast<int>(W * t);
    return quad::gauss_panels<double>(kern, 0.0, t, panels, 16);
}

AngularReport angular_reduction_check(const std::vector<double>& omegaX, int directions) {
    AngularReport rep;
    const int nth = 64, nph = 128;
    const auto& g = quad::gauss_legendre(nth);
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> nd;
    for (int d = 0; d < directions; ++d) {
        Vec3 n{nd(rng), nd(rng), nd(rng)};
        n = n / norm(n);
        for (double z : omegaX) {
            std::array<cplx, 9> acc{};
            for (int i = 0; i < nth; ++i) {
                double mu = g.nodes[i], st = std::sqrt(1 - mu * mu);
                for (int j = 0; j < nph; ++j) {
                    double ph = 2 * kPi * j / nph;
                    Vec3 k{st * std::cos(ph), st * std::sin(ph), mu};
                    cplx e = g.weights[i] * (2 * kPi / nph) * std::polar(1.0, z * dot(k, n));
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) acc[3 * a + b] += ((a == b ? 1.0 : 0.0) - k[a] * k[b]) * e;
                }
            }
            RealMat3 tau = tau_kernel(z, n);
            cplx tr{};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    cplx v = acc[3 * a + b] / (4 * kPi);
                    rep.maxElementError = std::max(rep.maxElementError, std::abs(v - tau(a, b)));
                    if (a == b) tr += v;
                }
            rep.maxTraceError = std::max(rep.maxTraceError, std::abs(tr - 2 * std::sin(z) / z));
        }
    }
    RealMat3 small = tau_kernel(1e-3, Vec3{0.3, -0.5, 0.8});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            rep.smallArgumentError = std::max(rep.smallArgumentError, std::abs(small(a, b) - (a == b ? 2.0 / 3 : 0.0)));
    return rep;
}

}  // namespace advwave
