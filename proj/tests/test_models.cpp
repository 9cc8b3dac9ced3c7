#include "doctest.h"

#include "orbspeed/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace orbspeed;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("models")
{
    TEST_CASE("closed-form orbit points")
    {
        // strip: log rho = pi t / width, angle 0
        LogPolarPoint s = orbit_point(ModelSpec::strip(1.0), 2.0);
        CHECK(s.log_rho == doctest::Approx(2.0 * kPi).epsilon(1e-14));
        CHECK(s.theta == 0.0);

        // vertical half-plane: w_t = 1 + it
        LogPolarPoint h = orbit_point(ModelSpec::half_plane(), 1.0);
        CHECK(h.log_rho == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
        CHECK(h.theta == doctest::Approx(kPi / 4.0).epsilon(1e-14));

        // symmetric sector of total opening pi: u_t = (1 + t)
        LogPolarPoint w = orbit_point(ModelSpec::sector(kPi / 2.0, kPi / 2.0), 10.0);
        CHECK(w.log_rho == doctest::Approx(std::log(11.0)).epsilon(1e-13));
        CHECK(w.theta == doctest::Approx(0.0).epsilon(1e-15));

        // symmetric quarter opening: u_t = (1 + t)^2
        LogPolarPoint q = orbit_point(ModelSpec::sector(kPi / 4.0, kPi / 4.0), 10.0);
        CHECK(q.log_rho == doctest::Approx(2.0 * std::log(11.0)).epsilon(1e-13));

        CHECK(orbit_point(ModelSpec::half_plane(), 0.0).log_rho == 0.0);
        CHECK_THROWS_AS(orbit_point(ModelSpec::half_plane(), -1.0), std::invalid_argument);
    }

    TEST_CASE("asymmetric sector tilts toward the wider side")
    {
        // W(pi/6, pi/3): limit angle is -(eta - theta) p / 2 with p = pi / beta
        ModelSpec m = ModelSpec::sector(kPi / 6.0, kPi / 3.0);
        LogPolarPoint far = orbit_point(m, 1e8);
        CHECK(far.theta == doctest::Approx(-kPi / 6.0).epsilon(1e-6));
        CHECK(std::abs(far.theta) < kPi / 2.0);
    }

    TEST_CASE("bound-only models refuse orbit evaluation")
    {
        CHECK_THROWS_WITH_AS(orbit_point(ModelSpec::parabola(2.0), 1.0),
                             "bound-only model; use `bounds`", bound_only_error);
        CHECK_THROWS_AS(orbit_point(ModelSpec::xi(2.0, 0.5), 1.0), bound_only_error);
    }

    TEST_CASE("grids")
    {
        auto g = make_grid(1.0, 1e6, 200, GridSpacing::Log);
        CHECK(g.size() == 200);
        CHECK(g.front() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g.back() == doctest::Approx(1e6).epsilon(1e-14));
        for (size_t i = 1; i < g.size(); ++i)
            CHECK(g[i] > g[i - 1]);
        // log spacing: constant ratio
        double r0 = g[1] / g[0], r1 = g[150] / g[149];
        CHECK(r0 == doctest::Approx(r1).epsilon(1e-10));

        auto lin = make_grid(0.0, 10.0, 11, GridSpacing::Linear);
        CHECK(lin[3] == doctest::Approx(3.0).epsilon(1e-14));

        CHECK_THROWS_AS(make_grid(1.0, 1.0, 10, GridSpacing::Log), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(1.0, 2.0, 1, GridSpacing::Log), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(0.0, 2.0, 10, GridSpacing::Log), std::invalid_argument);
        CHECK_NOTHROW(make_grid(0.0, 2.0, 10, GridSpacing::Linear));
    }

    TEST_CASE("orbit containers")
    {
        Orbit orbit = orbit_grid(ModelSpec::sector(1.0, 1.0), 1.0, 100.0, 25);
        CHECK(orbit.size() == 25);
        CHECK(orbit.source == OrbitSource::Computed);
        CHECK(orbit.model.has_value());
        CHECK(orbit.index_of(1.0) == 0);
        CHECK(orbit.index_of(100.0) == 24);
        CHECK_THROWS_AS(orbit.index_of(55.5), std::out_of_range);

        Orbit same = orbit_at_times(ModelSpec::sector(1.0, 1.0), orbit.times);
        for (size_t i = 0; i < orbit.size(); ++i) {
            CHECK(same.points[i].log_rho == orbit.points[i].log_rho);
            CHECK(same.points[i].theta == orbit.points[i].theta);
        }
        CHECK_THROWS_AS(orbit_at_times(ModelSpec::strip(1.0), {}), std::invalid_argument);
    }

    TEST_CASE("csv round trip is lossless and deterministic")
    {
        Orbit orbit = orbit_grid(ModelSpec::sector(kPi / 6.0, kPi / 3.0), 1.0, 1e5, 40);
        std::ostringstream os1, os2;
        write_orbit_csv(os1, orbit);
        write_orbit_csv(os2, orbit);
        CHECK(os1.str() == os2.str());
        CHECK(os1.str().substr(0, 16) == "t,log_rho,theta\n");

        std::istringstream is(os1.str());
        Orbit back = read_orbit_csv(is);
        CHECK(back.source == OrbitSource::Ingested);
        REQUIRE(back.size() == orbit.size());
        for (size_t i = 0; i < orbit.size(); ++i) {
            // 17 significant digits round-trip doubles exactly
            CHECK(back.times[i] == orbit.times[i]);
            CHECK(back.points[i].log_rho == orbit.points[i].log_rho);
            CHECK(back.points[i].theta == orbit.points[i].theta);
        }
    }

    TEST_CASE("ingest rejects non-orbit data")
    {
        // rho cos(theta) must be nondecreasing (Denjoy-Wolff monotonicity)
        std::vector<OrbitRow> shrink = {{0.0, std::log(5.0), 0.0}, {1.0, std::log(2.0), 0.0}};
        CHECK_THROWS_AS(ingest_orbit(shrink), std::runtime_error);

        std::vector<OrbitRow> unsorted = {{1.0, 0.0, 0.0}, {0.5, 1.0, 0.0}};
        CHECK_THROWS_AS(ingest_orbit(unsorted), std::runtime_error);

        std::vector<OrbitRow> ok = {{0.0, 0.0, 0.0}, {1.0, 1.0, 0.1}, {2.0, 2.0, -0.2}};
        Orbit orbit = ingest_orbit(ok);
        CHECK(orbit.size() == 3);
        CHECK_FALSE(orbit.model.has_value());
    }

    TEST_CASE("time for a target log modulus inverts the orbit")
    {
        ModelSpec strip = ModelSpec::strip(1.0);
        CHECK(time_for_log_modulus(strip, 2.0 * kPi) == doctest::Approx(2.0).epsilon(1e-9));
        for (ModelSpec m : {ModelSpec::sector(kPi / 2.0, kPi / 2.0),
                            ModelSpec::sector(0.4, 1.1), ModelSpec::half_plane()}) {
            double target = orbit_point(m, 37.5).log_rho;
            double t = time_for_log_modulus(m, target);
            CHECK(orbit_point(m, t).log_rho == doctest::Approx(target).epsilon(1e-9));
        }
    }
}
