#include "doctest.h"

#include "advwave/kinetics.hpp"
#include "advwave/oracle.hpp"
#include "advwave/parallel.hpp"
#include "advwave/photodetect.hpp"
#include "advwave/radiometry.hpp"
#include "support/oracles.hpp"

using namespace advwave;

TEST_CASE("thread configuration") {
    CHECK(parallel_threads() >= 1);
    if (!openmp_enabled()) CHECK(parallel_threads() == 1);
}

TEST_CASE("sphere quadrature: parallel matches serial") {
    auto f = [](const Vec3& n) { return std::exp(n.x) * (1 + n.z * n.z) + n.y; };
    for (int order : {8, 24, 64}) {
        double s = sphere_integrate(f, 1.3, order, Exec::Serial);
        double q = sphere_integrate(f, 1.3, order, Exec::Parallel);
        CHECK(q == doctest::Approx(s).epsilon(1e-14));
    }
}

TEST_CASE("dispersion and position kernels: parallel matches serial") {
    auto p = DipoleParams::from_rate(30, 1.0, {0, 0, 1});
    ChargeParams c;
    c.r0 = {0.5, 0, 0};
    auto grid = dispersion_grid(6.0, p);
    auto a = dispersion_change(grid, p, c, Exec::Serial);
    auto b = dispersion_change(grid, p, c, Exec::Parallel);
    CHECK(a.dSource == b.dSource);
    CHECK(a.dVacS == b.dVacS);
    CHECK(a.cumTotal == b.cumTotal);

    PosDispOptions so, po;
    so.exec = Exec::Serial;
    double ps = posdisp_change(3.0, p, c, 0.1, so).dipolePart;
    double pp = posdisp_change(3.0, p, c, 0.1, po).dipolePart;
    CHECK(pp == doctest::Approx(ps).epsilon(1e-12));
}

TEST_CASE("N = 2 propagation: parallel matches serial") {
    auto p = DipoleParams::from_rate(1000, 1.0, {0, 0, 1});
    auto g = build_grid(p, 200, 50);
    SectorState s = SectorState::excited(g);
    s.windowLo = 0;
    s.windowCount = g.count;
    s.amp_e1.assign(g.count, cplx{});
    s.amp_g2.assign(static_cast<std::size_t>(g.count) * (g.count + 1) / 2, cplx{});
    auto rng = testsupport::rng(7);
    for (int k = 0; k < g.count; ++k) s.amp_e1[k] = cplx(testsupport::uniform(rng, -1, 1), testsupport::uniform(rng, -1, 1));
    double n = std::sqrt(s.norm2_n2());
    for (auto& a : s.amp_e1) a /= n;

    OracleOptions so, po;
    so.exec = Exec::Serial;
    po.exec = Exec::Parallel;
    double dt = max_oracle_step(g);
    auto a = propagate(s, g, p, 0.3, dt, so);
    auto b = propagate(s, g, p, 0.3, dt, po);
    CHECK(a.amp_e1 == b.amp_e1);
    CHECK(a.amp_g2 == b.amp_g2);
    CHECK(std::abs(a.norm2_n2() - 1) < 1e-8);
}

TEST_CASE("suppression report: parallel matches serial") {
    auto cfg = DetectorConfig::identical({0.4, 0, 0}, DipoleParams::from_rate(20, 1.0, {0, 0, 1}));
    std::vector<double> grid{0, 0.5, 1, 2, 3};
    auto a = suppression_report(cfg, grid, Exec::Serial);
    auto b = suppression_report(cfg, grid, Exec::Parallel);
    CHECK(a.maxRatio == b.maxRatio);
}
