#include "doctest.h"

#include "advwave/atomdyn.hpp"
#include "support/oracles.hpp"

using namespace advwave;
using testsupport::rel;

namespace {
const DipoleParams P = DipoleParams::from_rate(10.0, 1.0, {0, 0, 1});
}

TEST_CASE("sigma_z_expect values") {
    CHECK(sigma_z_expect(0, P) == 1);
    CHECK(std::abs(sigma_z_expect(std::log(2.0), P)) < 1e-15);
    CHECK(sigma_z_expect(3, P) == doctest::Approx(-0.900426).epsilon(1e-6));
    CHECK(sigma_z_expect(50, P) == doctest::Approx(-1).epsilon(1e-15));
    CHECK_THROWS_AS(sigma_z_expect(-1e-3, P), std::invalid_argument);
}

TEST_CASE("corr_plus_minus") {
    CHECK(corr_plus_minus(0, 0, P) == cplx(1, 0));
    CHECK(corr_plus_minus(0.7, 0.7, P).real() == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
    // u = 1, v = 2 with w0 = 10 Gamma: e^{-1.5} e^{-10 i}
    cplx expect = std::exp(-1.5) * std::polar(1.0, -10.0);
    CHECK(rel(corr_plus_minus(1, 2, P), expect) < 1e-14);
    CHECK_THROWS_AS(corr_plus_minus(-1, 0, P), std::invalid_argument);

    auto g = testsupport::rng(3);
    for (int i = 0; i < 200; ++i) {
        double u = testsupport::uniform(g, 0, 4), v = testsupport::uniform(g, 0, 4), s = testsupport::uniform(g, -1, 1);
        double u2 = std::max(0.0, u + s), v2 = v + (u - u2);
        if (v2 < 0) continue;
        // modulus depends only on u + v
        CHECK(std::abs(std::abs(corr_plus_minus(u, v, P)) - std::abs(corr_plus_minus(u2, v2, P))) < 1e-14);
        CHECK(std::abs(corr_plus_minus(u, v, P)) == doctest::Approx(std::exp(-0.5 * (u + v))).epsilon(1e-13));
        // phase depends only on u - v
        cplx a = corr_plus_minus(u, v, P), b = corr_plus_minus(u + 0.3, v + 0.3, P);
        CHECK(std::abs(std::arg(a / b)) < 1e-12);
    }
}

TEST_CASE("corr_minus_plus") {
    CHECK(corr_minus_plus(0, 0, P) == cplx{});
    CHECK(corr_minus_plus(0, 2.5, P) == cplx{});
    CHECK(corr_minus_plus(1.3, 1.3, P).real() == doctest::Approx(1 - std::exp(-1.3)).epsilon(1e-14));
    cplx expect = std::exp(-1.5) * (std::exp(1.0) - 1) * std::polar(1.0, 10.0 * (2 - 1));
    CHECK(rel(corr_minus_plus(1, 2, P), expect) < 1e-14);
    CHECK_THROWS_AS(corr_minus_plus(2, 1, P), std::domain_error);
    CHECK_THROWS_AS(corr_minus_plus(-1, 1, P), std::invalid_argument);
}

TEST_CASE("commutator_expect") {
    CHECK(commutator_expect(0, 0, P) == cplx(-1, 0));
    double l2 = std::log(2.0);
    CHECK(std::abs(commutator_expect(l2, l2, P)) < 1e-15);
    CHECK_THROWS_AS(commutator_expect(1, 0.5, P), std::domain_error);

    auto g = testsupport::rng(4);
    for (int i = 0; i < 500; ++i) {
        double t = testsupport::uniform(g, 0, 20);
        CHECK(std::abs(commutator_expect(t, t, P) + sigma_z_expect(t, P)) < 1e-12);
        // the two equal-time populations sum to one
        CHECK(std::abs((corr_minus_plus(t, t, P) + corr_plus_minus(t, t, P)) - 1.0) < 1e-12);
        // commutator = <s- s+> - <s+ s-> at equal times
        CHECK(std::abs(commutator_expect(t, t, P) - (corr_minus_plus(t, t, P) - corr_plus_minus(t, t, P))) < 1e-12);
        // unequal times, u <= v: <[s-(u), s+(v)]> = <s-(u)s+(v)> - <s+(v)s-(u)>
        double u = testsupport::uniform(g, 0, 5), v = u + testsupport::uniform(g, 0, 5);
        cplx lhs = commutator_expect(u, v, P);
        cplx rhs = corr_minus_plus(u, v, P) - corr_plus_minus(v, u, P);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("long-time limits") {
    double t = 80;
    CHECK(std::abs(corr_plus_minus(t, t + 1, P)) < 1e-30);
    // the anti-normal pair tends to the ground-state free evolution, not zero
    cplx lim = std::exp(-0.5) * std::polar(1.0, 10.0);
    CHECK(std::abs(corr_minus_plus(t, t + 1, P) - lim) < 1e-12);
    CHECK(std::abs(commutator_expect(t, t + 1, P) - lim) < 1e-12);
    CHECK(sigma_z_expect(t, P) == doctest::Approx(-1));
}
