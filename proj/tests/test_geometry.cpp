#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "rieszcap/geometry.hpp"
#include "rieszcap/set_io.hpp"

using namespace rieszcap;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("interval grid midpoints") {
    const auto cloud = discretize(SetSpec::interval(-1.0, 1.0), 4, Scheme::grid);
    REQUIRE(cloud.size() == 4);
    CHECK(cloud.coords[0] == doctest::Approx(-0.75));
    CHECK(cloud.coords[1] == doctest::Approx(-0.25));
    CHECK(cloud.coords[2] == doctest::Approx(0.25));
    CHECK(cloud.coords[3] == doctest::Approx(0.75));
    for (double m : cloud.cell_measures) CHECK(m == doctest::Approx(0.5));
    CHECK(cloud.native_dim == 1);
    CHECK(cloud.mesh_size == doctest::Approx(0.25));
}

TEST_CASE("circle boundary nodes") {
    const auto cloud =
        discretize(SetSpec::sphere(2, {0.0, 0.0}, 1.0), 4, Scheme::boundary);
    REQUIRE(cloud.size() == 4);
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto x = cloud.node(i);
        CHECK(std::hypot(x[0], x[1]) == doctest::Approx(1.0));
        total += cloud.cell_measures[i];
    }
    CHECK(total == doctest::Approx(2.0 * kPi));
    // equal spacing
    CHECK(cloud.distance(0, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(cloud.distance(0, 2) == doctest::Approx(2.0));
}

TEST_CASE("points passthrough") {
    const auto cloud = discretize(
        SetSpec::points({{0.0, 0.0}, {1.0, 0.0}}), 64, Scheme::grid);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.cell_measures[0] == 1.0);
    CHECK(cloud.native_dim == 0);
    CHECK_THROWS_AS(
        discretize(SetSpec::points({{0.0, 0.0}, {0.0, 0.0}}), 4, Scheme::grid),
        std::invalid_argument);
}

TEST_CASE("fibonacci sphere") {
    const auto cloud =
        discretize(SetSpec::sphere(3, {0.0, 0.0, 0.0}, 2.0), 500, Scheme::boundary);
    REQUIRE(cloud.size() == 500);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto x = cloud.node(i);
        CHECK(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(cloud.total_measure() == doctest::Approx(16.0 * kPi));
    CHECK(cloud.native_dim == 2);
}

TEST_CASE("ball grid node counts and measures") {
    for (int target : {64, 256, 1024}) {
        const auto cloud =
            discretize(SetSpec::ball(2, {0.0, 0.0}, 1.0), target, Scheme::grid);
        CHECK(cloud.size() >= static_cast<std::size_t>(target) / 2);
        CHECK(cloud.size() <= static_cast<std::size_t>(target) * 2);
        // exact rim clipping: total measure approximates the disk area closely
        CHECK(cloud.total_measure() == doctest::Approx(kPi).epsilon(1e-3));
        for (std::size_t i = 0; i < cloud.size(); ++i)
            CHECK(std::hypot(cloud.node(i)[0], cloud.node(i)[1]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("box grid") {
    const auto cloud =
        discretize(SetSpec::box({0.0, 0.0}, {2.0, 1.0}), 128, Scheme::grid);
    CHECK(cloud.size() >= 64);
    CHECK(cloud.size() <= 256);
    CHECK(cloud.total_measure() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("interval boundary scheme clusters endpoints") {
    const auto cloud =
        discretize(SetSpec::interval(-1.0, 1.0), 16, Scheme::boundary);
    REQUIRE(cloud.size() == 16);
    CHECK(cloud.coords.front() == doctest::Approx(-1.0));
    CHECK(cloud.coords.back() == doctest::Approx(1.0));
    CHECK(cloud.total_measure() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("native scheme resolution") {
    const auto sphere_native =
        discretize(SetSpec::sphere(2, {0.0, 0.0}, 1.0), 8, Scheme::native);
    CHECK(sphere_native.native_dim == 1);  // boundary
    const auto ball_native =
        discretize(SetSpec::ball(2, {0.0, 0.0}, 1.0), 64, Scheme::native);
    CHECK(ball_native.native_dim == 2);  // grid
}

TEST_CASE("unsupported combinations") {
    CHECK_THROWS_AS(
        discretize(SetSpec::box({0.0, 0.0}, {1.0, 1.0}), 16, Scheme::boundary),
        std::invalid_argument);
    CHECK_THROWS_AS(discretize(SetSpec::interval(0.0, 1.0), 1, Scheme::grid),
                    std::invalid_argument);
}

TEST_CASE("diameter") {
    const auto two = discretize(SetSpec::points({{0.0, 0.0}, {3.0, 4.0}}), 2,
                                Scheme::grid);
    CHECK(diameter(two) == doctest::Approx(5.0));
    const auto one = discretize(SetSpec::points({{1.0, 1.0}}), 2, Scheme::grid);
    CHECK(diameter(one) == 0.0);
    const auto square = discretize(
        SetSpec::points({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}), 4,
        Scheme::grid);
    CHECK(diameter(square) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(diameter(NodeCloud{}), std::invalid_argument);
}

TEST_CASE("scaling covariance of discretizations") {
    for (double s : {0.5, 2.0}) {
        // grid scheme, interval: bit-exact under power-of-two scaling
        const auto base = discretize(SetSpec::interval(-1.0, 1.0), 32, Scheme::grid);
        const auto big =
            discretize(scaled(SetSpec::interval(-1.0, 1.0), s), 32, Scheme::grid);
        REQUIRE(base.size() == big.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(big.coords[i] == base.coords[i] * s);
            CHECK(big.cell_measures[i] == base.cell_measures[i] * s);
        }
        // boundary scheme, circle
        const auto c0 =
            discretize(SetSpec::sphere(2, {0.0, 0.0}, 1.0), 16, Scheme::boundary);
        const auto c1 = discretize(scaled(SetSpec::sphere(2, {0.0, 0.0}, 1.0), s),
                                   16, Scheme::boundary);
        for (std::size_t i = 0; i < c0.size(); ++i) {
            CHECK(c1.coords[2 * i] == doctest::Approx(c0.coords[2 * i] * s).epsilon(1e-15));
            CHECK(c1.cell_measures[i] == doctest::Approx(c0.cell_measures[i] * s).epsilon(1e-15));
        }
        // ball grid: nodes scale, measures scale by s^d
        const auto b0 = discretize(SetSpec::ball(2, {0.0, 0.0}, 1.0), 64, Scheme::grid);
        const auto b1 =
            discretize(scaled(SetSpec::ball(2, {0.0, 0.0}, 1.0), s), 64, Scheme::grid);
        REQUIRE(b0.size() == b1.size());
        for (std::size_t i = 0; i < b0.size(); ++i) {
            CHECK(b1.coords[2 * i] == doctest::Approx(b0.coords[2 * i] * s).epsilon(1e-12));
            CHECK(b1.cell_measures[i] ==
                  doctest::Approx(b0.cell_measures[i] * s * s).epsilon(1e-10));
        }
    }
}

TEST_CASE("determinism: identical inputs give bit-identical clouds") {
    const auto a = discretize(SetSpec::ball(2, {0.1, -0.2}, 1.3), 200, Scheme::grid);
    const auto b = discretize(SetSpec::ball(2, {0.1, -0.2}, 1.3), 200, Scheme::grid);
    REQUIRE(a.size() == b.size());
    CHECK(a.coords == b.coords);
    CHECK(a.cell_measures == b.cell_measures);
}

TEST_CASE("union with dedupe") {
    // two intervals sharing the midpoint region get deduplicated nodes
    const auto spec = SetSpec::set_union(
        {SetSpec::interval(-1.0, 0.0), SetSpec::interval(0.0, 1.0)});
    const auto cloud = discretize(spec, 32, Scheme::grid);
    CHECK(cloud.dim == 1);
    CHECK(cloud.total_measure() == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j)
            CHECK(cloud.distance(i, j) > 0.0);
    CHECK_THROWS_AS(
        SetSpec::set_union({SetSpec::interval(0.0, 1.0),
                            SetSpec::ball(2, {0.0, 0.0}, 1.0)}),
        std::invalid_argument);
}

TEST_CASE("set json round trip") {
    const char* docs[] = {
        R"({"type":"ball","dim":3,"center":[0,0,0],"radius":1.0})",
        R"({"type":"interval","a":-1,"b":1})",
        R"({"type":"points","coords":[[0,0],[1,0]]})",
        R"({"type":"box","lo":[0,0],"hi":[1,2]})",
        R"({"type":"union","parts":[{"type":"interval","a":0,"b":1},{"type":"interval","a":2,"b":3}]})",
        R"({"type":"sphere","dim":2,"center":[0,0],"radius":2.5})",
    };
    for (const char* doc : docs) {
        const SetSpec spec = set_spec_from_json(doc);
        const SetSpec again = set_spec_from_json(set_spec_to_json(spec));
        CHECK(spec.describe() == again.describe());
    }
    CHECK_THROWS_AS(set_spec_from_json("{\"type\":\"blob\"}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(set_spec_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(set_spec_from_json(
                        R"({"type":"interval","a":2,"b":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(set_spec_from_json(
                        R"({"type":"ball","dim":2,"center":[0,0],"radius":-1})"),
                    std::invalid_argument);
}

TEST_CASE("set validation") {
    CHECK_THROWS_AS(SetSpec::interval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SetSpec::ball(2, {0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SetSpec::box({0.0, 0.0}, {1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SetSpec::points({}), std::invalid_argument);
    CHECK_THROWS_AS(SetSpec::sphere(1, {0.0}, 1.0), std::invalid_argument);
    CHECK(SetSpec::ball(3, {0.0, 0.0, 0.0}, 1.0).ambient_dim() == 3);
    CHECK(*SetSpec::ball(2, {0.0, 0.0}, 2.0).nominal_measure() ==
          doctest::Approx(4.0 * kPi));
}

TEST_CASE("diameter scales exactly with the cloud") {
    auto cloud = discretize(
        SetSpec::points({{0.0, 0.0}, {3.0, 4.0}, {-1.0, 2.0}}), 3, Scheme::grid);
    const double base = diameter(cloud);
    NodeCloud big = cloud;
    for (double& c : big.coords) c *= 2.0;
    CHECK(diameter(big) == 2.0 * base);
}
