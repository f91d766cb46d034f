#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rieszcap/analysis.hpp"
#include "rieszcap/closedform.hpp"

using namespace rieszcap;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("regime classification") {
    CHECK(classify_ball_regime(3, -5.0) == BallCapacityRegime::p_le_minus2);
    CHECK(classify_ball_regime(3, 0.0) == BallCapacityRegime::p_zero);
    CHECK(classify_ball_regime(3, 1.0) == BallCapacityRegime::mid);
    CHECK(classify_ball_regime(3, 2.5) == BallCapacityRegime::high);
    CHECK(classify_ball_regime(2, 1.0) == BallCapacityRegime::high);
    CHECK_THROWS_AS(classify_ball_regime(3, 3.0), std::domain_error);
}

TEST_CASE("ball capacity pinned values") {
    CHECK(ball_capacity(3, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ball_capacity(2, 1.0) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
    CHECK(ball_capacity(3, 0.0) ==
          doctest::Approx(2.0 / std::sqrt(std::exp(1.0))).epsilon(1e-13));
    CHECK(ball_capacity(4, 0.0) ==
          doctest::Approx(std::pow(std::exp(1.0), 0.25)).epsilon(1e-13));
    for (int n : {2, 3, 4})
        CHECK(ball_capacity(n, -2.0) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    // 3-ball closed form 2 (1 - p/2)^(1/p) on (-2, 1]
    for (double p : {-1.0, -0.5, 0.5, 1.0}) {
        CHECK(ball_capacity(3, p) ==
              doctest::Approx(2.0 * std::pow(1.0 - 0.5 * p, 1.0 / p))
                  .epsilon(1e-12));
    }
    CHECK(ball_capacity(3, -1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    // disk sinc form on (0,2)
    for (double p : {0.5, 1.0, 1.5}) {
        const double sinc = std::sin(p * kPi / 2.0) / (p * kPi / 2.0);
        CHECK(ball_capacity(2, p) ==
              doctest::Approx(std::pow(sinc, 1.0 / p)).epsilon(1e-12));
    }
    // Newtonian capacity is 1 in every dimension
    for (int n = 3; n <= 8; ++n)
        CHECK(ball_capacity(n, n - 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ball_capacity(3, 3.5), std::domain_error);
    CHECK_THROWS_AS(ball_capacity(1, 0.5), std::domain_error);
}

TEST_CASE("interval capacity pinned values") {
    CHECK(interval_capacity(-1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(interval_capacity(0.0) == 0.5);
    CHECK(interval_capacity(-3.0) ==
          doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
    // gamma-ratio branch tends to 1/2 at p -> 0 (symmetric average kills the
    // linear term; each one-sided value sits ~4e-5 away)
    const double avg =
        0.5 * (interval_capacity(1e-4) + interval_capacity(-1e-4));
    CHECK(std::abs(avg - 0.5) <= 1e-6);
    CHECK_THROWS_AS(interval_capacity(1.0), std::domain_error);
}

TEST_CASE("regime continuity at the boundaries") {
    // p = -2: both branch formulas evaluate to sqrt(2) at the boundary point
    for (int n : {2, 3, 4})
        CHECK(ball_capacity(n, -2.0) ==
              doctest::Approx(ball_capacity(n, std::nextafter(-2.0, 0.0)))
                  .epsilon(1e-9));
    // p = n-2 for n >= 3: mid and high branches agree at the boundary
    for (int n : {3, 4, 5}) {
        const double pm = n - 2.0;
        CHECK(ball_capacity(n, pm) ==
              doctest::Approx(ball_capacity(n, std::nextafter(pm, n)))
                  .epsilon(1e-9));
    }
    // p = 0: symmetric average of the adjacent branches matches the digamma
    // formula to second order
    for (int n : {2, 3, 4}) {
        const double avg =
            0.5 * (ball_capacity(n, 1e-6) + ball_capacity(n, -1e-6));
        CHECK(std::abs(avg - ball_capacity(n, 0.0)) <= 1e-9);
    }
}

TEST_CASE("strict monotonicity in p") {
    for (int n = 1; n <= 4; ++n) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 200; ++k) {
            const double p = -6.0 + (n - 1e-3 + 6.0) * k / 199.0;
            const double c = n == 1 ? interval_capacity(p) : ball_capacity(n, p);
            CHECK(c < prev);
            prev = c;
        }
    }
}

TEST_CASE("sqrt(2) envelope as n grows") {
    for (double p : {-1.0, 0.0, 1.0}) {
        double prev = 0.0;
        for (int n = 2; n <= 256; n *= 2) {
            const double c = ball_capacity(n, p);
            CHECK(c < std::sqrt(2.0) + 1e-3);
            if (n > 2) CHECK(c >= prev);
            prev = c;
        }
        CHECK(prev == doctest::Approx(std::sqrt(2.0)).epsilon(5e-3));
    }
}

TEST_CASE("diameter endpoint p -> -infinity") {
    const double cap = ball_capacity(3, -50.0);
    CHECK(std::abs(cap - 2.0) <=
          2.0 * (1.0 - std::pow(2.0, -1.0 / 50.0)) + 1e-12);
}

TEST_CASE("volume endpoint p -> n") {
    for (int n : {2, 3}) {
        const double p = n - 0.01;
        const double cap = ball_capacity(n, p);
        const double vol = sphere_area(n) * std::pow(cap, p) / (n - p);
        CHECK(std::abs(vol - ball_volume(n)) <= 0.01 * ball_volume(n));
    }
}

TEST_CASE("sphere area and ball volume") {
    CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_area(0), std::domain_error);
}

TEST_CASE("gotz constant") {
    CHECK(gotz_constant(1.0, 1) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(gotz_constant(2.0, 2) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
    for (int n = 1; n <= 4; ++n) {
        const double lhs = gotz_constant(n, n) * ball_volume(n) * ball_volume(n);
        CHECK(lhs == doctest::Approx(sphere_area(n)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gotz_constant(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(gotz_constant(-1.0, 2), std::domain_error);
}

TEST_CASE("ball equilibrium density") {
    // surface regime: uniform measure on the sphere
    const double s3[] = {1.0, 0.0, 0.0};
    const auto surf = ball_equilibrium_density(3, 1.0, s3);
    CHECK(surf.kind == DensityValue::Kind::surface_uniform);
    CHECK(surf.value == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-13));
    // volume regime, disk at p = 1: rho(0) = 1/(2 pi)
    const double origin2[] = {0.0, 0.0};
    const auto vol = ball_equilibrium_density(2, 1.0, origin2);
    CHECK(vol.kind == DensityValue::Kind::volume);
    CHECK(vol.value == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
    // rim divergence like (1 - |x|^2)^(-1/2)
    const double near[] = {0.999, 0.0};
    const double at = ball_equilibrium_density(2, 1.0, near).value;
    const double expect = 1.0 / (2.0 * kPi) * std::pow(1.0 - 0.999 * 0.999, -0.5);
    CHECK(at == doctest::Approx(expect).epsilon(1e-12));
    // non-uniqueness and domain errors
    CHECK_THROWS_AS(ball_equilibrium_density(3, -2.5, s3), NonUniqueEquilibrium);
    const double outside[] = {2.0, 0.0, 0.0};
    CHECK_THROWS_AS(ball_equilibrium_density(3, 1.0, outside), std::domain_error);
}

TEST_CASE("ball volume density integrates to 1") {
    // radial quadrature of the n = 2, p = 1 density over the disk
    const int m = 400000;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = (i + 0.5) / m;
        const double x[] = {r, 0.0};
        acc += ball_equilibrium_density(2, 1.0, x).value * 2.0 * kPi * r / m;
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("interval equilibrium density") {
    CHECK(interval_equilibrium_density(0.0, 0.0) ==
          doctest::Approx(1.0 / kPi).epsilon(1e-13));
    // p = 1/2 at the center: 1 / B(1/2, 3/4)
    const double b = std::exp(std::lgamma(0.5) + std::lgamma(0.75) -
                              std::lgamma(1.25));
    CHECK(interval_equilibrium_density(0.5, 0.0) ==
          doctest::Approx(1.0 / b).epsilon(1e-12));
    CHECK_THROWS_AS(interval_equilibrium_density(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(interval_equilibrium_density(1.5, 0.0), std::domain_error);
}

TEST_CASE("arcsine density integrates to 1 per cell masses") {
    // equilibrium_cell_masses with p = 0 on a uniform grid: masses sum to 1
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto cloud = discretize(spec, 128, Scheme::grid);
    const auto masses = equilibrium_cell_masses(spec, cloud, 0.0);
    REQUIRE(masses.has_value());
    double sum = 0.0;
    for (double m : *masses) sum += m;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    // spot check against the arcsine CDF on the first cell
    const double edge = -1.0 + 2.0 / 128.0;
    const double want = (std::asin(edge) - std::asin(-1.0)) / kPi;
    CHECK((*masses)[0] == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("closed form capacity of set descriptions") {
    const auto ball = SetSpec::ball(3, {0.0, 0.0, 0.0}, 2.0);
    CHECK(*closed_form_capacity(ball, 1.0) == doctest::Approx(2.0));
    CHECK(*closed_form_capacity(ball, 3.5) == 0.0);
    const auto iv = SetSpec::interval(0.0, 4.0);
    CHECK(*closed_form_capacity(iv, -1.0) == doctest::Approx(2.0));
    const auto sph = SetSpec::sphere(3, {0.0, 0.0, 0.0}, 1.0);
    CHECK(*closed_form_capacity(sph, 1.0) == doctest::Approx(1.0));
    CHECK_FALSE(closed_form_capacity(sph, 1.5).has_value());
    const auto two = SetSpec::points({{0.0, 0.0}, {1.0, 0.0}});
    CHECK(*closed_form_capacity(two, -2.0) ==
          doctest::Approx(std::pow(2.0, -0.5)));
    CHECK_FALSE(closed_form_capacity(two, 0.5).has_value());
}
