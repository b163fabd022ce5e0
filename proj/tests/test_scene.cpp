#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sarkit/constants.hpp"
#include "sarkit/scene.hpp"

using namespace sarkit;
using namespace sarkit::scene;

TEST_CASE("position interpolation is exact at samples and linear between") {
    Trajectory traj;
    traj.samples = {{0.0, {0.0, 0.0, 0.0}}, {1.0, {2.0, 4.0, 6.0}}, {3.0, {2.0, 4.0, 10.0}}};
    traj.validate();

    const auto at1 = position_at(traj, 1.0);
    CHECK(at1.x == doctest::Approx(2.0));
    CHECK(at1.z == doctest::Approx(6.0));

    const auto mid = position_at(traj, 0.5);
    CHECK(mid.x == doctest::Approx(1.0));
    CHECK(mid.y == doctest::Approx(2.0));
    CHECK(mid.z == doctest::Approx(3.0));

    CHECK_THROWS_AS(position_at(traj, -0.5), std::out_of_range);
    CHECK_THROWS_AS(position_at(traj, 3.5), std::out_of_range);
}

TEST_CASE("bistatic time of flight") {
    const Vec3 origin{0.0, 0.0, 0.0};

    SUBCASE("monostatic collapse at 15 m") {
        const Vec3 target{15.0, 0.0, 0.0};
        CHECK(tof_bistatic(origin, origin, target) == doctest::Approx(30.0 / kC0).epsilon(1e-15));
        CHECK(tof_bistatic(origin, origin, target) == doctest::Approx(100.07e-9).epsilon(1e-3));
    }
    SUBCASE("target coincident with tx, rx 4.7 m away") {
        const Vec3 rx{4.7, 0.0, 0.0};
        CHECK(tof_bistatic(origin, rx, origin) == doctest::Approx(4.7 / kC0).epsilon(1e-15));
        CHECK(tof_bistatic(origin, rx, origin) == doctest::Approx(15.68e-9).epsilon(1e-3));
    }
    SUBCASE("3-4-5 triangle") {
        const Vec3 target{3.0, 4.0, 0.0};
        CHECK(tof_bistatic(origin, origin, target) == doctest::Approx(10.0 / kC0).epsilon(1e-15));
    }
    SUBCASE("symmetry and triangle bound") {
        const Vec3 tx{1.0, 2.0, 3.0}, rx{-4.0, 0.5, 9.0};
        for (double q = 0.0; q < 5.0; q += 1.0) {
            const Vec3 target{q, -q, 2.0 * q};
            CHECK(tof_bistatic(tx, rx, target) ==
                  doctest::Approx(tof_bistatic(rx, tx, target)).epsilon(1e-15));
            CHECK(tof_bistatic(tx, rx, target) >= tof_sidelink(tx, rx));
        }
    }
}

TEST_CASE("sidelink time of flight") {
    const Vec3 origin{0.0, 0.0, 0.0};
    CHECK(tof_sidelink(origin, origin) == 0.0);
    CHECK(tof_sidelink(origin, {4.7, 0.0, 0.0}) == doctest::Approx(15.6786e-9).epsilon(1e-4));
    CHECK(tof_sidelink(origin, {300.0, 0.0, 0.0}) == doctest::Approx(1.0007e-6).epsilon(1e-4));
}

TEST_CASE("linear trajectory sampling") {
    SUBCASE("stationary platform") {
        const auto traj = linear_trajectory({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}, 100.0, 5);
        for (const auto& s : traj.samples) {
            CHECK(s.pos.x == 1.0);
            CHECK(s.pos.y == 2.0);
            CHECK(s.pos.z == 3.0);
        }
    }
    SUBCASE("30 m aperture at 1 m/s and 100 Hz gives 3001 samples, 1 cm spacing") {
        const auto traj = linear_trajectory({0.0, -15.0, 10.0}, {0.0, 1.0, 0.0}, 100.0, 3001);
        REQUIRE(traj.samples.size() == 3001);
        CHECK(traj.samples.back().pos.y == doctest::Approx(15.0).epsilon(1e-12));
        CHECK(traj.samples[1].pos.y - traj.samples[0].pos.y == doctest::Approx(0.01));
    }
    SUBCASE("single sample") {
        const auto traj = linear_trajectory({5.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 10.0, 1);
        REQUIRE(traj.samples.size() == 1);
        CHECK(traj.samples[0].pos.x == 5.0);
    }
}
