#include "doctest.h"

#include <cmath>
#include <numbers>

#include "billiard/geometry.hpp"

using namespace billiard;
using std::numbers::pi;

TEST_CASE("chaotic fraction closed form") {
    CHECK(mu_c(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mu_c(1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // Independent evaluation: arccos(1/2) = pi/3.
    const double seg = pi / 3.0 - 0.5 * std::sqrt(0.75);
    const double expected = 1.0 - 0.5 * seg / (0.5 + pi / 4.0);
    CHECK(std::abs(mu_c(0.5) - expected) < 1e-12);
    CHECK(mu_c(0.5) == doctest::Approx(0.7611).epsilon(1e-4));

    CHECK_THROWS(mu_c(-0.01));
    CHECK_THROWS(mu_c(1.01));

    // Strictly increasing on a grid.
    double prev = mu_c(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double cur = mu_c(i / 100.0);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("half mushroom perimeter and area are exact") {
    for (double w : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const Billiard b = make_half_mushroom(w);
        CHECK(std::abs(b.perimeter() - (4.0 + pi / 2.0)) < 1e-12);
        CHECK(std::abs(b.area() - (w + pi / 4.0)) < 1e-14);
    }
    const Billiard full = make_full_mushroom(0.4);
    CHECK(std::abs(full.perimeter() - (4.0 + pi)) < 1e-12);
    CHECK(std::abs(full.area() - (0.8 + pi / 2.0)) < 1e-14);
}

TEST_CASE("area from sampled boundary matches closed form") {
    // Shoelace over the sampled polygon converges to the analytic area.
    const Billiard b = make_half_mushroom(0.37);
    const auto pts = b.sample_midpoint(10000);
    double twice_area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& p = pts[i].position;
        const Vec2& q = pts[(i + 1) % pts.size()].position;
        twice_area += p.cross(q);
    }
    CHECK(std::abs(0.5 * twice_area - b.area()) < 1e-6);
}

TEST_CASE("midpoint sampling invariants") {
    const Billiard b = make_half_mushroom(0.5);
    const auto pts = b.sample_midpoint(100);
    REQUIRE(pts.size() == 100);

    double total = 0.0;
    for (const auto& p : pts) total += p.weight;
    CHECK(std::abs(total - (4.0 + pi / 2.0)) < 1e-12);

    // Points lie on the analytic curve and normals are unit inward.
    for (const auto& p : pts) {
        CHECK(std::abs(p.normal.norm() - 1.0) < 1e-12);
        const Vec2 probe = p.position + 1e-6 * p.normal;
        CHECK(b.contains(probe));
        CHECK((b.point_at(p.s) - p.position).norm() < 1e-12);
    }

    // Curvature is 1 on the cap arc, 0 elsewhere.
    for (const auto& p : pts) {
        const bool on_arc = p.position.y > 0.0 && p.position.x > 0.0 &&
                            std::abs(p.position.squared_norm() - 1.0) < 1e-9;
        CHECK(p.curvature == doctest::Approx(on_arc ? 1.0 : 0.0));
    }
}

TEST_CASE("samples never coincide with corners") {
    const Billiard b = make_half_mushroom(0.3);
    const auto corners = b.corner_arclengths();
    const auto pts = b.sample_midpoint(64);
    for (const auto& p : pts) {
        for (double c : corners) CHECK(std::abs(p.s - c) > 1e-9);
    }
}

TEST_CASE("scaling weight is positive on the active boundary") {
    for (double w : {0.1, 0.5, 0.9}) {
        const Billiard b = make_half_mushroom(w);
        for (const auto& p : b.sample_gauss(40.0, SegmentFilter::TensionActive)) {
            CHECK(p.r_n > 1e-6);
        }
    }
    const Billiard sector = make_sector(1.5 * pi, 1.0);
    for (const auto& p : sector.sample_gauss(40.0, SegmentFilter::TensionActive)) {
        CHECK(p.r_n == doctest::Approx(1.0));
    }
}

TEST_CASE("weyl counting") {
    const Billiard b = make_half_mushroom(0.5);
    const double c = b.corner_constant();
    CHECK(weyl_counting(b, 0.0) == doctest::Approx(c));

    const double A = 0.5 + pi / 4.0;
    const double L = 4.0 + pi / 2.0;
    const double expected = A * 1e4 / (4.0 * pi) - L * 100.0 / (4.0 * pi) + c;
    CHECK(weyl_counting(b, 1e4) == doctest::Approx(expected).epsilon(1e-12));

    // d/dE of the counting function matches the density formula.
    const double E = 100.0, h = 1e-3;
    const double fd = (weyl_counting(b, E + h) - weyl_counting(b, E - h)) / (2.0 * h);
    CHECK(std::abs(fd - weyl_density(b, E)) < 1e-6);

    CHECK_THROWS(weyl_counting(b, -1.0));
    CHECK_THROWS(make_half_mushroom(1.5));
}

TEST_CASE("test geometries") {
    const Billiard sq = make_rectangle(1.0, 1.0);
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK(sq.area() == doctest::Approx(1.0));
    CHECK(sq.corner_constant() == doctest::Approx(0.25));

    const Billiard disk = make_disk(1.0);
    CHECK(disk.perimeter() == doctest::Approx(2.0 * pi));
    CHECK(disk.corner_constant() == doctest::Approx(1.0 / 6.0));

    const Billiard sec = make_sector(1.5 * pi, 1.0);
    CHECK(sec.perimeter() == doctest::Approx(2.0 + 1.5 * pi));
    CHECK(sec.area() == doctest::Approx(0.75 * pi));
    CHECK(sec.contains({0.5, 0.5}));
    CHECK(sec.contains({-0.3, -0.3}));
    CHECK(!sec.contains({0.3, -0.3}));
}
