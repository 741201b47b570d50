#include "doctest.h"

#include <cmath>
#include <numbers>

#include "billiard/dynamics.hpp"

using namespace billiard;
using std::numbers::pi;

namespace {

/// Arclength of the top of the cap arc on the full mushroom (theta = pi/2).
double cap_top(const Billiard&) { return pi / 2.0; }

} // namespace

TEST_CASE("vertical diameter orbit is period two") {
    const Billiard b = make_full_mushroom(0.5);
    PhasePoint x{cap_top(b), 0.0};
    const Vec2 start = b.point_at(x.s);
    for (int n = 0; n < 10; ++n) {
        x = bounce(b, x);
        CHECK(std::abs(x.p) < 1e-12);
    }
    // After an even number of bounces we are back at the top of the cap.
    CHECK((b.point_at(x.s) - start).norm() < 1e-9);
}

TEST_CASE("momentum stays physical and reflection is specular") {
    const Billiard b = make_full_mushroom(0.4);
    PhasePoint x{1.234, 0.37};
    for (int n = 0; n < 10000; ++n) {
        const BounceOutcome out = bounce_step(b, x);
        REQUIRE(!out.corner);
        CHECK(std::abs(out.next.p) <= 1.0);
        // The landing point lies on the boundary.
        const Vec2 q0 = b.point_at(x.s);
        const Vec2 q1 = b.point_at(out.next.s);
        CHECK(std::abs((q1 - q0).norm() - out.chord) < 1e-9);
        x = out.next;
    }
}

TEST_CASE("tangent map matches finite differences of the map") {
    const Billiard b = make_full_mushroom(0.5);
    const double h = 1e-7;
    for (const PhasePoint x : {PhasePoint{0.3, 0.2}, PhasePoint{2.0, -0.5},
                               PhasePoint{5.1, 0.65}, PhasePoint{6.8, 0.05}}) {
        const BounceOutcome out = bounce_step(b, x);
        REQUIRE(!out.corner);
        const TangentMap m = bounce_jacobian(x, out.next, out);

        const PhasePoint xs1 = bounce(b, {x.s + h, x.p});
        const PhasePoint xs0 = bounce(b, {x.s - h, x.p});
        const PhasePoint xp1 = bounce(b, {x.s, x.p + h});
        const PhasePoint xp0 = bounce(b, {x.s, x.p - h});

        CHECK(std::abs((xs1.s - xs0.s) / (2 * h) - m.dsds) < 1e-5 * std::max(1.0, std::abs(m.dsds)));
        CHECK(std::abs((xs1.p - xs0.p) / (2 * h) - m.dpds) < 1e-5 * std::max(1.0, std::abs(m.dpds)));
        CHECK(std::abs((xp1.s - xp0.s) / (2 * h) - m.dsdp) < 1e-5 * std::max(1.0, std::abs(m.dsdp)));
        CHECK(std::abs((xp1.p - xp0.p) / (2 * h) - m.dpdp) < 1e-5 * std::max(1.0, std::abs(m.dpdp)));

        // Area preservation of the bounce map.
        CHECK(std::abs(m.dsds * m.dpdp - m.dsdp * m.dpds - 1.0) < 1e-10);
    }
}

TEST_CASE("time reversal retraces short orbits") {
    const Billiard b = make_full_mushroom(0.5);
    // A regular cap orbit accumulates roundoff only algebraically: the full
    // 100 bounces stay within tolerance. A chaotic orbit doubles the error at
    // every bounce, so only a short stretch is retraceable in doubles.
    const auto retrace = [&](PhasePoint start, int n_bounces) {
        PhasePoint x = start;
        std::vector<PhasePoint> forward{x};
        for (int n = 0; n < n_bounces; ++n) {
            x = bounce(b, x);
            forward.push_back(x);
        }
        PhasePoint y{forward.back().s, -forward.back().p};
        for (int n = static_cast<int>(forward.size()) - 2; n >= 0; --n) {
            y = bounce(b, y);
            CHECK(std::abs(y.s - forward[n].s) < 1e-6);
            CHECK(std::abs(y.p + forward[n].p) < 1e-6);
        }
    };
    retrace({cap_top(b) + 0.3, 0.7}, 100);
    retrace({0.7, 0.11}, 12);
}

TEST_CASE("cap orbits tangent to the inner circle stay in the cap") {
    const double w = 0.5;
    const Billiard b = make_full_mushroom(w);
    // Launch on the arc with tangential momentum above the stem width: the
    // angular momentum about the cap center is conserved up to sign, so the
    // orbit can never reach the stem mouth.
    PhasePoint x{cap_top(b) + 0.3, w + 0.05};
    for (int n = 0; n < 10000; ++n) {
        const BounceOutcome out = bounce_step(b, x);
        REQUIRE(!out.corner);
        x = out.next;
        const Vec2 q = b.point_at(x.s);
        CHECK(q.y > -1e-12);
    }
}

TEST_CASE("orbit classification") {
    const Billiard b = make_full_mushroom(0.5);

    // Purely cap-confined launch: regular.
    CHECK(classify_orbit(b, {cap_top(b) + 0.3, 0.7}, 1000) == OrbitClass::Regular);

    // Launch on the stem bottom: chaotic.
    const double bottom = pi + 1.0 + 1.0 + 0.3;  // arc + left hat + left side + a bit
    CHECK(classify_orbit(b, {bottom, 0.1}, 1000) == OrbitClass::Chaotic);

    // Horizontal period-2 chord between the stem side walls: the marginal
    // bouncing-ball family, SALI decays only algebraically.
    const double side_r = pi + (1.0 - 0.5) + 1.0 + 2.0 * 0.5 + 0.4;  // on the right stem side
    const Vec2 q = b.point_at(side_r);
    REQUIRE(q.x == doctest::Approx(0.5));
    CHECK(classify_orbit(b, {side_r, 0.0}, 1000) == OrbitClass::Regular);

    // The vertical diameter through the stem mouth is a hyperbolic period-2
    // orbit (flat wall at distance twice the focal length of the cap).
    CHECK(classify_orbit(b, {cap_top(b), 0.0}, 1000) == OrbitClass::Chaotic);
}

TEST_CASE("momentum spread starts at zero and saturates at the chaotic-sea average") {
    const Billiard b = make_full_mushroom(0.5);
    const auto curve = momentum_spread(b, 2000, 300, 7);
    CHECK(curve[0] == doctest::Approx(0.0));

    // Long-time average over a single chaotic orbit as the independent oracle.
    PhasePoint x{pi + 2.3, 0.05};
    double sum = 0.0;
    const int n_orbit = 200000;
    int alive = 0;
    for (int n = 0; n < n_orbit; ++n) {
        const BounceOutcome out = bounce_step(b, x);
        if (out.corner) break;
        x = out.next;
        sum += x.p * x.p;
        ++alive;
    }
    const double orbit_avg = sum / alive;
    double tail = 0.0;
    for (int n = 250; n <= 300; ++n) tail += curve[n];
    tail /= 51.0;
    CHECK(tail == doctest::Approx(orbit_avg).epsilon(0.05));
    // The regular island is excluded, so saturation is below the uniform value 1/3.
    CHECK(tail < 1.0 / 3.0);
}

TEST_CASE("transport time orders with stem width") {
    // Modest ensembles keep this test fast; the acceptance suite runs the
    // paper-scale version.
    const auto wide = transport_time(make_full_mushroom(0.9), 20000, 150, 0.95, 400, 11);
    const auto narrow = transport_time(make_full_mushroom(0.4), 20000, 150, 0.95, 400, 11);
    CHECK(wide.transport_steps < narrow.transport_steps);
    CHECK(wide.transport_steps < 20);

    // Filling curve is a non-decreasing fraction of the final occupancy.
    double prev = 0.0;
    for (double v : wide.filling_curve) {
        CHECK(v >= prev - 1e-15);
        CHECK(v <= 1.0 + 1e-15);
        prev = v;
    }
}

TEST_CASE("alpha parameter") {
    const Billiard half = make_half_mushroom(0.5);
    CHECK(localization_alpha(half, 1000.0, 10.0) == doctest::Approx(177.3).epsilon(1e-3));
    const double L = 4.0 + pi / 2.0;
    CHECK(localization_alpha(half, pi * 10.0 / L, 10.0) == doctest::Approx(1.0));
    CHECK(localization_alpha(half, 100.0, 180.0) == doctest::Approx(0.985).epsilon(1e-2));
}
