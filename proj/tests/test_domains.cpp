#include "doctest.h"

#include "orbspeed/domains.hpp"

#include <cmath>
#include <stdexcept>

using namespace orbspeed;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("domains")
{
    TEST_CASE("model validation rejects bad parameters")
    {
        CHECK_THROWS_AS(ModelSpec::sector(-0.1, 0.2), std::invalid_argument);
        CHECK_THROWS_AS(ModelSpec::sector(0.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(ModelSpec::sector(4.0, 0.1), std::invalid_argument); // theta > pi
        CHECK_THROWS_AS(ModelSpec::strip(0.0), std::invalid_argument);
        CHECK_THROWS_AS(ModelSpec::parabola(1.0), std::invalid_argument);
        CHECK_THROWS_AS(ModelSpec::xi(2.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(ModelSpec::xi(1.0, 1.0), std::invalid_argument);
        CHECK_NOTHROW(ModelSpec::sector(kPi / 6.0, 0.0)); // one-sided sector is fine
    }

    TEST_CASE("spec text round trips through describe")
    {
        for (const char* text :
             {"sector:1.5708,0.785398", "strip:1", "halfplane", "parabola:2",
              "xi:2,0.523599"}) {
            ModelSpec m = parse_model_spec(text);
            ModelSpec again = parse_model_spec(m.describe());
            CHECK(again.kind == m.kind);
            CHECK(again.theta == doctest::Approx(m.theta).epsilon(1e-12));
            CHECK(again.eta == doctest::Approx(m.eta).epsilon(1e-12));
            CHECK(again.width == doctest::Approx(m.width).epsilon(1e-12));
            CHECK(again.alpha == doctest::Approx(m.alpha).epsilon(1e-12));
        }
        CHECK_THROWS_WITH_AS(parse_model_spec("wedge:1"),
                             doctest::Contains("unknown kind"), std::invalid_argument);
        CHECK_THROWS_AS(parse_model_spec("sector:1"), std::invalid_argument);
        CHECK_THROWS_AS(parse_model_spec("strip:abc"), std::invalid_argument);
        CHECK_THROWS_AS(parse_model_spec("halfplane:1"), std::invalid_argument);
    }

    TEST_CASE("closed-form and convexity flags")
    {
        CHECK(ModelSpec::sector(1.0, 1.0).closed_form());
        CHECK(ModelSpec::strip(1.0).closed_form());
        CHECK(ModelSpec::half_plane().closed_form());
        CHECK_FALSE(ModelSpec::parabola(2.0).closed_form());
        CHECK_FALSE(ModelSpec::xi(2.0, 0.5).closed_form());

        CHECK(ModelSpec::sector(kPi / 2.0, kPi / 2.0).convex()); // total opening pi
        CHECK_FALSE(ModelSpec::sector(2.0, 2.0).convex());
        CHECK(ModelSpec::parabola(2.0).convex());
        CHECK(ModelSpec::xi(2.0, kPi / 6.0).convex());
        CHECK_FALSE(ModelSpec::xi(2.0, 2.0).convex()); // sector side past pi/2
    }

    TEST_CASE("parabola boundary gap closed form at alpha 2")
    {
        // distance from i s to {y = x^2} is sqrt(s - 1/4) once s >= 1/2
        for (double s : {1.0, 2.0, 10.0, 1e4, 1e8}) {
            CHECK(delta_parabola(s, 2.0)
                  == doctest::Approx(std::sqrt(s - 0.25)).epsilon(1e-10));
        }
        CHECK(delta_parabola(10.0, 2.0) < delta_parabola(20.0, 2.0));
        CHECK_THROWS_AS(delta_parabola(0.5, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(delta_parabola(2.0, 1.0), std::invalid_argument);
        // alpha > 2 branch exercises the stationary-point bracket
        double d3 = delta_parabola(100.0, 3.0);
        double x3 = std::cbrt(100.0); // leading-order root of x^3 = s
        CHECK(d3 == doctest::Approx(x3).epsilon(0.05));
    }

    TEST_CASE("xi gaps split into sector and parabola sides")
    {
        XiGaps g = delta_xi(100.0, 2.0, kPi / 6.0);
        CHECK(g.delta_plus == doctest::Approx(50.0).epsilon(1e-12)); // sin(pi/6) t
        CHECK(g.delta_minus == doctest::Approx(std::sqrt(99.75)).epsilon(1e-10));
        XiGaps wide = delta_xi(100.0, 2.0, kPi / 2.0);
        CHECK(wide.delta_plus == doctest::Approx(100.0).epsilon(1e-12));
    }

    TEST_CASE("boundary gap along the orbit ray")
    {
        CHECK(boundary_gap(ModelSpec::strip(1.0), 7.0) == 0.5);
        CHECK(boundary_gap(ModelSpec::half_plane(), 7.0) == 1.0);
        // symmetric half-opening pi/2: base i, boundary is the real axis
        ModelSpec upper = ModelSpec::sector(kPi / 2.0, kPi / 2.0);
        CHECK(boundary_gap(upper, 3.0) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(boundary_gap(ModelSpec::parabola(2.0), 3.0)
              == doctest::Approx(std::sqrt(3.75)).epsilon(1e-10));
        CHECK_THROWS_AS(boundary_gap(upper, -1.0), std::invalid_argument);
    }

    TEST_CASE("quasi-symmetry separates non-tangential from tangential")
    {
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i)
            grid.push_back(std::pow(10.0, 0.1 * i)); // 1 .. 1e6

        QuasiSymmetryReport sym = quasi_symmetry_scan(ModelSpec::sector(1.0, 1.0), grid);
        CHECK(sym.quasi_symmetric);
        CHECK(sym.K_estimate == doctest::Approx(1.0).epsilon(1e-9));
        for (double r : sym.ratio)
            CHECK(r == doctest::Approx(1.0).epsilon(1e-9));

        QuasiSymmetryReport tang = quasi_symmetry_scan(ModelSpec::half_plane(), grid);
        CHECK_FALSE(tang.quasi_symmetric);
        CHECK(tang.fitted_exponent == doctest::Approx(1.0).epsilon(0.05));

        QuasiSymmetryReport par = quasi_symmetry_scan(ModelSpec::parabola(2.0), grid);
        CHECK(par.quasi_symmetric);

        QuasiSymmetryReport xi = quasi_symmetry_scan(ModelSpec::xi(2.0, kPi / 6.0), grid);
        CHECK_FALSE(xi.quasi_symmetric);
        CHECK(xi.fitted_exponent == doctest::Approx(0.5).epsilon(0.15));
        CHECK(xi.K_estimate > 3.0);
    }

    TEST_CASE("inclusion of nested models")
    {
        ModelSpec narrow = ModelSpec::sector(kPi / 4.0, kPi / 4.0);
        ModelSpec wide = ModelSpec::sector(kPi / 2.0, kPi / 2.0);
        CHECK(inclusion_check(narrow, wide));
        CHECK_FALSE(inclusion_check(wide, narrow));

        CHECK(inclusion_check(ModelSpec::strip(1.0), ModelSpec::half_plane()));
        CHECK_FALSE(inclusion_check(ModelSpec::half_plane(), ModelSpec::strip(1.0)));
        CHECK_FALSE(inclusion_check(narrow, ModelSpec::half_plane()));

        // analytic cross-kind cases
        CHECK(inclusion_check(ModelSpec::parabola(2.0), wide));
        CHECK(inclusion_check(ModelSpec::sector(kPi / 6.0, 0.0), ModelSpec::xi(2.0, kPi / 6.0)));
        CHECK(inclusion_check(ModelSpec::xi(2.0, kPi / 6.0), ModelSpec::sector(kPi / 6.0, kPi / 2.0)));
        CHECK_FALSE(inclusion_check(narrow, ModelSpec::parabola(2.0)));

        Inclusion probe = inclusion_probe(narrow, wide);
        CHECK(probe.included);
        CHECK(probe.exact);
    }
}
