#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rieszcap/analysis.hpp"

using namespace rieszcap;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("resolve_discretization picks the equilibrium support") {
    const auto ball3 = SetSpec::ball(3, {0.0, 0.0, 0.0}, 1.0);
    // p <= n-2: equilibrium lives on the sphere
    auto [s1, sch1] = resolve_discretization(ball3, 1.0, Scheme::native);
    CHECK(std::holds_alternative<SphereSpec>(s1.v));
    CHECK(sch1 == Scheme::boundary);
    // p > n-2: volume support
    auto [s2, sch2] = resolve_discretization(ball3, 2.5, Scheme::native);
    CHECK(std::holds_alternative<BallSpec>(s2.v));
    CHECK(sch2 == Scheme::grid);
    // explicit schemes pass through
    auto [s3, sch3] = resolve_discretization(ball3, 1.0, Scheme::grid);
    CHECK(std::holds_alternative<BallSpec>(s3.v));
    CHECK(sch3 == Scheme::grid);
}

TEST_CASE("estimate_capacity: two points at p = -2") {
    const auto spec = SetSpec::points({{0.0, 0.0}, {1.0, 0.0}});
    const auto res = estimate_capacity(spec, -2.0, {2});
    CHECK(res.capacity == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-9));
}

TEST_CASE("estimate_capacity: interval at p = -1 within 1%") {
    // the discrete optimum on the midpoint grid is exactly (2 - 2/N)/2, so a
    // single level needs N = 256 for 1% (at N = 64 the bias is exactly 1/64)
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto res = estimate_capacity(spec, -1.0, {256});
    CHECK(std::abs(res.capacity - 1.0) <= 0.01);
    CHECK(res.capacity ==
          doctest::Approx((2.0 - 2.0 / 256) / 2.0).epsilon(1e-7));
}

TEST_CASE("estimate_capacity: p >= n returns zero without solving") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto res = estimate_capacity(spec, 1.5, {64});
    CHECK(res.capacity == 0.0);
    CHECK(res.levels.empty());
    CHECK(!res.note.empty());
}

TEST_CASE("Richardson extrapolation recovers the exact endpoint model") {
    // discrete capacity at p = -1 is exactly (2 - 2/N)/2: c_inf = 1, beta = 1
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto res = estimate_capacity(spec, -1.0, {64, 128, 256});
    REQUIRE(res.extrapolated);
    CHECK(res.capacity == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(*res.extrapolation_order == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("end-to-end scaling law") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    for (double p : {-1.0, 0.5}) {
        const double base = estimate_capacity(spec, p, {64}).capacity;
        for (double s : {0.5, 2.0, 10.0}) {
            const double big =
                estimate_capacity(scaled(spec, s), p, {64}).capacity;
            CHECK(std::abs(big - s * base) <= 1e-6 * s * base);
        }
    }
}

TEST_CASE("set monotonicity: adding nodes never decreases capacity") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto cloud = discretize(spec, 32, Scheme::grid);
    const auto bigger = cloud.with_extra_nodes(
        {{1.25}, {1.5}, {1.75}}, {2.0 / 32, 2.0 / 32, 2.0 / 32});
    for (double p : {-1.5, -0.5, 0.0, 0.5}) {
        const RieszExponent e(p);
        const auto a = solve_equilibrium(e, cloud, {});
        const auto b = solve_equilibrium(e, bigger, {});
        const double ca = capacity_from_energy(e, a.energy);
        const double cb = capacity_from_energy(e, b.energy);
        CHECK(cb >= ca - 1e-9);
    }
}

TEST_CASE("capacity curve and CSV schema") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto table =
        capacity_curve(spec, {-2.0, -1.0, 0.0, 0.5}, {48}, Scheme::native, {});
    REQUIRE(table.rows.size() == 4);
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i)
        CHECK(table.rows[i].p < table.rows[i + 1].p);
    // closed-form column joins the oracle for every p
    for (const auto& r : table.rows) CHECK(r.closed_form.has_value());
    const std::string csv = curve_to_csv(table);
    CHECK(csv.rfind("p,capacity,energy,gap,iterations,N,closed_form\n", 0) == 0);
    CHECK_THROWS_AS(
        capacity_curve(spec, {0.5, -1.0}, {48}, Scheme::native, {}),
        std::invalid_argument);
}

TEST_CASE("monotonicity check with Jensen ordering") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto table = capacity_curve(spec, {-2.0, -1.0, 0.0, 0.3, 0.6}, {64},
                                      Scheme::native, {}, true);
    const auto rep = monotonicity_check(table, 0.02);
    CHECK(rep.passed);
    CHECK(rep.pair_checks.size() == 4);
    CHECK_FALSE(rep.jensen_checks.empty());
    for (const auto& jc : rep.jensen_checks) CHECK(jc.ok);
}

TEST_CASE("diameter limit check") {
    // two points at distance 5: ratio is exactly 2^(1/p)
    const auto two = SetSpec::points({{0.0, 0.0}, {3.0, 4.0}});
    const auto rep = diameter_limit_check(two, {-10.0, -5.0, -2.0, -1.0}, {2});
    CHECK(rep.passed);
    CHECK(rep.diam == doctest::Approx(5.0));
    for (const auto& row : rep.rows)
        CHECK(row.ratio ==
              doctest::Approx(std::pow(2.0, 1.0 / row.p)).epsilon(1e-9));
    // interval: two-sided bound plus 1-D equality within 1%
    const auto iv = SetSpec::interval(0.0, 2.0);
    const auto rep2 = diameter_limit_check(iv, {-2.0, -1.0}, {256});
    CHECK(rep2.passed);
    for (const auto& row : rep2.rows) {
        REQUIRE(row.equality_ok.has_value());
        CHECK(*row.equality_ok);
    }
    CHECK_THROWS_AS(diameter_limit_check(iv, {0.5}, {16}),
                    std::invalid_argument);
}

TEST_CASE("volume limit, closed-form route") {
    const auto disk = SetSpec::ball(2, {0.0, 0.0}, 1.0);
    const auto rep = volume_limit_estimate(disk, {1.99}, {},
                                           CapacitySource::closed_form);
    REQUIRE(rep.rows.size() == 1);
    CHECK(std::abs(rep.rows[0].volume_estimate - kPi) <= 0.01 * kPi);
    // extrapolation from three closed-form points lands near pi as well
    const auto rep3 = volume_limit_estimate(disk, {1.5, 1.7, 1.8}, {},
                                            CapacitySource::closed_form);
    CHECK(std::abs(rep3.extrapolated_volume - kPi) <= 0.02 * kPi);
    REQUIRE(rep3.true_measure.has_value());
    CHECK(*rep3.true_measure == doctest::Approx(kPi));
}

TEST_CASE("log limit on a two-point set") {
    // d > 1 keeps the excluded-diagonal log form minimized at equal split:
    // V_log = (1/2) log(1/d), cap_0 = sqrt(d). Atom sets carry no continuum
    // limit structure (the two-atom measure is fixed, so Cap_{p} does not
    // approach the discrete Cap_0), hence only the solver value is checked.
    const double d = 3.0;
    const auto two = SetSpec::points({{0.0, 0.0}, {d, 0.0}});
    const auto rep = log_limit_check(two, {0.2, 0.1, 0.05}, {2});
    CHECK(rep.cap0_numeric == doctest::Approx(std::sqrt(d)).epsilon(1e-9));
}

TEST_CASE("equilibrium measure continuity proxies on the circle") {
    const auto disk = SetSpec::ball(2, {0.0, 0.0}, 1.0);
    const auto rep = eqm_continuity_check(disk, -1.0, {0.2, 0.1, 0.05}, {64},
                                          ApproachSide::both);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.left_decreasing);
    CHECK(rep.right_decreasing);
    // rotational symmetry: first moments vanish at every p, so deviations stay
    // well below the moment scale
    for (const auto& row : rep.rows) {
        REQUIRE(row.dev_left.has_value());
        CHECK(*row.dev_left < 0.5);
    }
}

TEST_CASE("pstar probe: bounded and divergent classifications") {
    const auto iv = SetSpec::interval(-1.0, 1.0);
    const auto bounded =
        pstar_hypothesis_probe(iv, 0.0, 0.5, {64, 256, 1024});
    CHECK(bounded.classification == PstarClass::bounded);
    const auto divergent =
        pstar_hypothesis_probe(iv, 0.0, 1.2, {64, 512, 4096});
    CHECK(divergent.classification == PstarClass::divergent);
    CHECK_THROWS_AS(pstar_hypothesis_probe(iv, 0.5, 0.5, {64}),
                    std::invalid_argument);
}

TEST_CASE("validation suite passes") {
    const auto rep = run_validation();
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
    CHECK(rep.all_passed);
}

TEST_CASE("format_double round trips") {
    for (double x : {0.5, 1.0 / 3.0, 2.0 / kPi, 1e-300, 123456.789}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("report JSON emission is well formed") {
    const auto spec = SetSpec::interval(-1.0, 1.0);
    const auto res = estimate_capacity(spec, -1.0, {32, 64});
    const std::string js = to_json_string(res);
    CHECK(js.find("\"capacity\"") != std::string::npos);
    const auto rep = run_validation();
    CHECK(to_json_string(rep).find("\"all_passed\"") != std::string::npos);
}

TEST_CASE("cross energy of circle equilibrium stays stable under refinement") {
    // log-equilibrium weights on the circle, probed at p_star = 0.5: finite
    // and stable within +-5% as N doubles
    const auto circle = SetSpec::sphere(2, {0.0, 0.0}, 1.0);
    double prev = 0.0;
    for (int n : {64, 128, 256, 512}) {
        const auto cloud = discretize(circle, n, Scheme::boundary);
        const auto sol = solve_equilibrium(RieszExponent(0.0), cloud, {});
        const double ce = cross_energy(0.5, cloud, sol.weights).value();
        if (n > 64) CHECK(std::abs(ce - prev) <= 0.05 * std::abs(prev));
        prev = ce;
    }
}

TEST_CASE("disk curve row at p = 1 matches 2/pi within 2%") {
    const auto disk = SetSpec::ball(2, {0.0, 0.0}, 1.0);
    const auto table = capacity_curve(disk, {-4.0, -2.0, -1.0, 0.5, 1.0, 1.5},
                                      {256}, Scheme::native, {});
    for (const auto& row : table.rows) {
        if (row.p == 1.0) {
            CHECK(std::abs(row.capacity - 2.0 / kPi) <= 0.02 * (2.0 / kPi));
            REQUIRE(row.closed_form.has_value());
            CHECK(*row.closed_form == doctest::Approx(2.0 / kPi));
        }
    }
    const auto rep = monotonicity_check(table, 0.02);
    CHECK(rep.passed);
}

TEST_CASE("disk at p = -50 sits inside the diameter bounds") {
    const auto disk = SetSpec::ball(2, {0.0, 0.0}, 1.0);
    const auto rep = diameter_limit_check(disk, {-50.0}, {256});
    CHECK(rep.passed);
    CHECK(rep.rows[0].ratio >= std::pow(2.0, -1.0 / 50.0) * (1.0 - 1e-6));
    CHECK(rep.rows[0].ratio <= 1.0 + 1e-6);
}

TEST_CASE("interval log capacity within 1% of 1/2 at N = 256") {
    const auto iv = SetSpec::interval(-1.0, 1.0);
    const auto r = estimate_capacity(iv, 0.0, {256});
    CHECK(std::abs(r.capacity - 0.5) <= 0.005);
}

TEST_CASE("circle solves have vanishing first moments by symmetry") {
    const auto circle = SetSpec::sphere(2, {0.0, 0.0}, 1.0);
    const auto cloud = discretize(circle, 128, Scheme::boundary);
    for (double p : {0.3, 0.4, 0.5}) {
        const auto sol = solve_equilibrium(RieszExponent(p), cloud, {});
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            mx += sol.weights[i] * cloud.node(i)[0];
            my += sol.weights[i] * cloud.node(i)[1];
        }
        CHECK(std::abs(mx) <= 1e-6);
        CHECK(std::abs(my) <= 1e-6);
    }
}
