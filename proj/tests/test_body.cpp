// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "radgeom/body.hpp"
#include "radgeom/body_io.hpp"

using radgeom::Ball;
using radgeom::Body;
using radgeom::Point;
using radgeom::SpaceForm;
using testutil::pt;

namespace {
constexpr double kPi = std::numbers::pi;
const double kRoot075 = std::sqrt(0.75);
}  // namespace

TEST_CASE("body construction validates every ball") {
    SpaceForm flat(0.0, 2);
    CHECK_THROWS_AS(Body(flat, {}), std::invalid_argument);
    CHECK_THROWS_AS(Body(flat, {{pt({0.0, 0.0}), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Body(flat, {{pt({0.0, 0.0}), -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Body(flat, {{pt({0.0, 0.0, 0.0}), 1.0}}), std::invalid_argument);

    SpaceForm sph(1.0, 2);
    CHECK_THROWS_AS(Body(sph, {{pt({0.0, 0.0, 1.0}), kPi / 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Body(sph, {{pt({0.0, 0.0, 2.0}), 0.5}}), std::invalid_argument);
    CHECK_NOTHROW(Body(sph, {{pt({0.0, 0.0, 1.0}), 0.5}}));
}

TEST_CASE("body construction rejects empty intersections") {
    SpaceForm flat(0.0, 2);
    CHECK_THROWS_AS(Body(flat, {{pt({0.0, 0.0}), 1.0}, {pt({5.0, 0.0}), 1.0}}),
                    std::invalid_argument);
    // tangent disks meet in a single point, which has no interior
    CHECK_THROWS_AS(Body(flat, {{pt({0.0, 0.0}), 1.0}, {pt({2.0, 0.0}), 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("duplicate balls are dropped at construction") {
    SpaceForm flat(0.0, 2);
    Body body(flat, {{pt({0.0, 0.0}), 1.0}, {pt({0.0, 0.0}), 1.0}});
    CHECK(body.balls().size() == 1);
}

TEST_CASE("interior witness is certified") {
    Body body = testutil::two_unit_disks();
    CHECK(body.witness_depth() > 0.0);
    CHECK(radgeom::contains(body, body.interior_witness()));
    CHECK(radgeom::rho(body, body.interior_witness()) ==
          doctest::Approx(body.witness_depth()).epsilon(1e-12));
}

TEST_CASE("depth function matches the grid oracle on the two-disk body") {
    Body body = testutil::two_unit_disks();
    Point origin = pt({0.0, 0.0});
    CHECK(radgeom::rho(body, origin) == doctest::Approx(0.5).epsilon(1e-15));

    auto disks = testutil::to_disks(body);
    auto best = oracle::deepest_point(disks);
    CHECK(best.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::hypot(best.x, best.y) < 1e-6);
    // spot values against the oracle's independent depth formula
    for (auto [x, y] : {std::pair{0.3, 0.2}, {-0.4, 0.1}, {0.0, 0.86}, {1.4, 0.0}}) {
        CHECK(radgeom::rho(body, pt({x, y})) ==
              doctest::Approx(oracle::depth(disks, x, y)).epsilon(1e-14));
    }
}

TEST_CASE("cut-tip body has depth 0.5 at the origin and excludes the old apex") {
    Body body = radgeom::make_cutthetip(1.0, 0.5, 0.1);
    CHECK(radgeom::rho(body, pt({0.0, 0.0, 0.0})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(radgeom::contains(body, pt({0.0, 0.0, 0.0})));
    // the apex of the two-ball lens is cut away by the third ball
    Point apex = pt({0.0, kRoot075, 0.0});
    CHECK_FALSE(radgeom::contains(body, apex, 1e-9));
    const Point& c3 = body.balls()[2].center;
    CHECK((apex - c3).norm() > body.balls()[2].radius);  // direct distance check
}

TEST_CASE("cut-tip construction matches its documented layout") {
    Body body = radgeom::make_cutthetip(1.0, 0.5, 0.1);
    REQUIRE(body.balls().size() == 3);
    CHECK((body.balls()[0].center - pt({0.5, 0.0, 0.0})).norm() < 1e-15);
    CHECK((body.balls()[1].center - pt({-0.5, 0.0, 0.0})).norm() < 1e-15);
    CHECK((body.balls()[2].center - pt({0.0, kRoot075 - 1.1, 0.0})).norm() < 1e-12);
    for (const Ball& b : body.balls()) CHECK(b.radius == 1.0);

    CHECK_THROWS_AS(radgeom::make_cutthetip(0.0, 0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(radgeom::make_cutthetip(1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(radgeom::make_cutthetip(1.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(radgeom::make_cutthetip(1.0, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("boundary samples sit on the boundary with inward normals") {
    Body body = testutil::two_unit_disks();
    auto samples = radgeom::sample_boundary(body, 200, 3);
    REQUIRE(samples.size() >= 100);
    for (const auto& s : samples) {
        CHECK(std::abs(radgeom::rho(body, s.point)) <= radgeom::tol::boundary_projection);
        const Ball& owner = body.balls()[s.owner];
        CHECK(std::abs((s.point - owner.center).norm() - owner.radius) < 1e-12);
        CHECK(s.inward_normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
        // stepping inward raises the depth
        Point inside = s.point + 1e-6 * s.inward_normal;
        CHECK(radgeom::rho(body, inside) > radgeom::rho(body, s.point) - 1e-12);
        // the lens lives between the two vertical lines through the centers
        CHECK(s.point[0] >= -0.5 - 1e-9);
        CHECK(s.point[0] <= 0.5 + 1e-9);
    }
    auto again = radgeom::sample_boundary(body, 200, 3);
    REQUIRE(again.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        CHECK((again[i].point - samples[i].point).norm() == 0.0);
}

TEST_CASE("boundary sampling covers a spherical cap") {
    SpaceForm sph(1.0, 2);
    Body cap(sph, {{pt({0.0, 0.0, 1.0}), 0.8}});
    auto samples = radgeom::sample_boundary(cap, 64, 9);
    REQUIRE(!samples.empty());
    for (const auto& s : samples) {
        CHECK(std::abs(s.point.norm() - 1.0) < 1e-12);
        CHECK(std::abs(radgeom::rho(cap, s.point)) <= radgeom::tol::boundary_projection);
        CHECK(std::abs(s.inward_normal.dot(s.point)) < 1e-9);  // tangent to the sphere
    }
}

TEST_CASE("certified base angle bound is the worst ball curvature") {
    SpaceForm flat(0.0, 2);
    Body body(flat, {{pt({0.0, 0.0}), 0.5}, {pt({0.2, 0.0}), 1.0}});
    CHECK(radgeom::base_angle_lower_bound(body) == doctest::Approx(1.0).epsilon(1e-15));

    Body uniform = testutil::two_unit_disks();
    CHECK(radgeom::base_angle_lower_bound(uniform) == 1.0);

    SpaceForm sph(1.0, 2);
    Body cap(sph, {{pt({0.0, 0.0, 1.0}), 0.7}});
    CHECK(radgeom::base_angle_lower_bound(cap) ==
          doctest::Approx(1.0 / std::tan(0.7)).epsilon(1e-14));
}

TEST_CASE("chord estimator recovers the curvature of a circle") {
    SpaceForm flat(0.0, 2);
    radgeom::BoundarySample at;
    at.owner = 0;

    SUBCASE("unit circle") {
        Body disk(flat, {{pt({0.0, 0.0}), 1.0}});
        at.point = pt({1.0, 0.0});
        at.inward_normal = pt({-1.0, 0.0});
        auto est = radgeom::base_angle_estimate(disk, at, {1e-2, 1e-3});
        REQUIRE(est.ratios.size() == 2);
        CHECK_FALSE(est.corner);
        CHECK(est.ratios[1].first == 1e-3);
        CHECK(est.ratios[1].second == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("radius 2") {
        Body disk(flat, {{pt({0.0, 0.0}), 2.0}});
        at.point = pt({2.0, 0.0});
        at.inward_normal = pt({-1.0, 0.0});
        auto est = radgeom::base_angle_estimate(disk, at, {1e-3});
        REQUIRE(est.ratios.size() == 1);
        CHECK(est.ratios[0].second == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("huge radius stays numerically stable") {
        Body disk(flat, {{pt({0.0, 0.0}), 1e6}});
        at.point = pt({1e6, 0.0});
        at.inward_normal = pt({-1.0, 0.0});
        auto est = radgeom::base_angle_estimate(disk, at, {1e-3});
        REQUIRE(est.ratios.size() == 1);
        CHECK(est.ratios[0].second == doctest::Approx(1e-6).epsilon(1e-3));
    }
    SUBCASE("spherical cap boundary") {
        SpaceForm sph(1.0, 2);
        Body cap(sph, {{pt({0.0, 0.0, 1.0}), 0.7}});
        at.point = pt({std::sin(0.7), 0.0, std::cos(0.7)});
        at.inward_normal = radgeom::log_direction(sph, at.point, pt({0.0, 0.0, 1.0}));
        auto est = radgeom::base_angle_estimate(cap, at, {1e-3});
        REQUIRE(est.ratios.size() == 1);
        CHECK(est.ratios[0].second == doctest::Approx(1.0 / std::tan(0.7)).epsilon(1e-3));
    }
}

TEST_CASE("chord estimator flags corners and validates its inputs") {
    Body body = testutil::two_unit_disks();
    radgeom::BoundarySample corner;
    corner.owner = 0;
    corner.point = pt({0.0, kRoot075});
    corner.inward_normal =
        radgeom::log_direction(body.space(), corner.point, body.balls()[0].center);
    auto est = radgeom::base_angle_estimate(body, corner, {1e-2});
    CHECK(est.corner);

    CHECK_THROWS_AS(radgeom::base_angle_estimate(body, corner, {1e-3, 1e-2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(radgeom::base_angle_estimate(body, corner, {1e-6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(radgeom::base_angle_estimate(body, corner, {1e-2}, 0),
                    std::invalid_argument);
}

TEST_CASE("body files round-trip bit-exactly") {
    Body body = radgeom::make_cutthetip(1.0, 0.5, 0.1);
    std::string text = radgeom::body_to_json(body);
    Body back = radgeom::parse_body_json(text, "round-trip");
    REQUIRE(back.balls().size() == body.balls().size());
    CHECK(back.space().kappa == body.space().kappa);
    CHECK(back.space().dim == body.space().dim);
    for (std::size_t i = 0; i < body.balls().size(); ++i) {
        CHECK(back.balls()[i].radius == body.balls()[i].radius);
        CHECK((back.balls()[i].center - body.balls()[i].center).norm() == 0.0);
    }
    // a second serialization is byte-identical
    CHECK(radgeom::body_to_json(back) == text);
}

TEST_CASE("body parsing reports schema errors with their origin") {
    auto message_of = [](const std::string& text) {
        try {
            radgeom::parse_body_json(text, "probe.json");
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of("{") .find("probe.json") != std::string::npos);
    CHECK(message_of("[1, 2]").find("top level") != std::string::npos);
    CHECK(message_of(R"({"kappa": 5, "dim": 2, "balls": [{"center": [0,0], "radius": 1}]})")
              .find("kappa") != std::string::npos);
    CHECK(message_of(R"({"kappa": 0, "balls": [{"center": [0,0], "radius": 1}]})")
              .find("dim") != std::string::npos);
    CHECK(message_of(R"({"kappa": 0, "dim": 2, "balls": [{"center": [0], "radius": 1}]})")
              .find("center") != std::string::npos);
    CHECK_THROWS(radgeom::read_body_file("/nonexistent/body.json"));
}
