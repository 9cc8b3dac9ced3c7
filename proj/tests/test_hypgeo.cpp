#include "doctest.h"

#include "orbspeed/hypgeo.hpp"

#include <cmath>
#include <random>

using namespace orbspeed;

namespace {
constexpr double kPi = 3.14159265358979323846;

DiscPoint random_disc_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> rad(0.0, 0.999);
    double r = rad(rng), a = ang(rng);
    return DiscPoint::make({r * std::cos(a), r * std::sin(a)});
}
} // namespace

TEST_SUITE("hypgeo")
{
    TEST_CASE("axis distance is half the log modulus ratio")
    {
        CHECK(dist_halfplane(LogPolarPoint::make(0.0, 0.0), LogPolarPoint::make(2.0, 0.0))
              == doctest::Approx(1.0).epsilon(1e-13));
        // moduli around e^{pi * 1e6} never materialize
        double big = kPi * 1e6;
        CHECK(dist_halfplane(LogPolarPoint::make(0.0, 0.0), LogPolarPoint::make(big, 0.0))
              == doctest::Approx(0.5 * big).epsilon(1e-12));
        CHECK(dist_halfplane(LogPolarPoint::make(big, 0.1), LogPolarPoint::make(big, 0.1))
              == 0.0);
    }

    TEST_CASE("frozen distances")
    {
        // k_H(1, 1+2i) = arccosh(3)/2
        CHECK(dist_halfplane(LogPolarPoint::make(0.0, 0.0),
                             LogPolarPoint::from_complex({1.0, 2.0}))
              == doctest::Approx(0.8813735870195430).epsilon(1e-12));
        // k_D(0, 1/2) = log(3)/2
        CHECK(dist_disc(DiscPoint::make({0.0, 0.0}), DiscPoint::make({0.5, 0.0}))
              == doctest::Approx(0.5493061443340548).epsilon(1e-12));
    }

    TEST_CASE("disc distance from the origin")
    {
        for (double r : {0.1, 0.5, 0.9, 0.999}) {
            double expect = 0.5 * std::log((1.0 + r) / (1.0 - r));
            CHECK(dist_disc(DiscPoint::make({0.0, 0.0}), DiscPoint::make({0.0, r}))
                  == doctest::Approx(expect).epsilon(1e-12));
        }
    }

    TEST_CASE("cayley round trip and base point")
    {
        CHECK(std::abs(cayley(DiscPoint::make({0.0, 0.0})) - Complex{1.0, 0.0}) == 0.0);
        std::mt19937_64 rng(12345);
        for (int i = 0; i < 200; ++i) {
            DiscPoint p = random_disc_point(rng);
            Complex w = cayley(p);
            CHECK(w.real() > 0.0);
            CHECK(std::abs(inv_cayley(w).z - p.z) <= 1e-13);
        }
    }

    TEST_CASE("cayley is a hyperbolic isometry")
    {
        std::mt19937_64 rng(777);
        for (int i = 0; i < 1000; ++i) {
            DiscPoint a = random_disc_point(rng), b = random_disc_point(rng);
            double dd = dist_disc(a, b);
            double dh = dist_halfplane(LogPolarPoint::from_complex(cayley(a)),
                                       LogPolarPoint::from_complex(cayley(b)));
            CHECK(dd == doctest::Approx(dh).epsilon(1e-10));
        }
    }

    TEST_CASE("metric axioms")
    {
        std::mt19937_64 rng(31337);
        for (int i = 0; i < 300; ++i) {
            DiscPoint a = random_disc_point(rng), b = random_disc_point(rng),
                      c = random_disc_point(rng);
            double ab = dist_disc(a, b), ba = dist_disc(b, a);
            CHECK(ab >= 0.0);
            CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
            CHECK(dist_disc(a, a) == 0.0);
            CHECK(dist_disc(a, c) <= ab + dist_disc(b, c) + 1e-12);
        }
    }

    TEST_CASE("projection onto the axis is the nearest ray point")
    {
        LogPolarPoint p = LogPolarPoint::make(3.0, 1.1);
        LogPolarPoint proj = project_to_ray(p);
        CHECK(proj.theta == 0.0);
        CHECK(proj.log_rho == p.log_rho); // same modulus
        double best = dist_halfplane(p, proj);
        CHECK(best == doctest::Approx(tangential_offset(p.theta)).epsilon(1e-12));
        for (double dl : {-2.0, -0.5, -0.1, 0.1, 0.5, 2.0}) {
            LogPolarPoint other = LogPolarPoint::make(p.log_rho + dl, 0.0);
            CHECK(dist_halfplane(p, other) >= best - 1e-12);
        }
    }

    TEST_CASE("tangential offset values")
    {
        CHECK(tangential_offset(0.0) == 0.0);
        // arccosh(1/cos(pi/3))/2 = arccosh(2)/2
        CHECK(tangential_offset(kPi / 3.0)
              == doctest::Approx(0.6584789484624083).epsilon(1e-12));
        CHECK(tangential_offset(-kPi / 3.0)
              == doctest::Approx(0.6584789484624083).epsilon(1e-12));
        CHECK(tangential_offset(0.3) < tangential_offset(0.8)); // strictly increasing in |theta|
    }

    TEST_CASE("boundary arc A_t")
    {
        CHECK(arc_At(0.0).normalized_length == 0.5); // rho = 1: half the circle, exactly
        CHECK(arc_At(std::log(2.0)).normalized_length
              == doctest::Approx(0.29516723530086653).epsilon(1e-13));
        // endpoints map to +-i rho under the Cayley transform
        for (double L : {0.0, 0.7, 3.0}) {
            BoundaryArc arc = arc_At(L);
            for (Complex e : {arc.endpoint_a, arc.endpoint_b}) {
                CHECK(std::abs(e) == doctest::Approx(1.0).epsilon(1e-12));
                Complex w = (Complex{1.0, 0.0} + e) / (Complex{1.0, 0.0} - e);
                CHECK(std::abs(w.real()) <= 1e-9 * std::abs(w));
                CHECK(std::abs(std::abs(w.imag()) - std::exp(L)) <=
                      1e-9 * std::exp(L));
            }
        }
        // shrinks as the rays recede
        CHECK(arc_At(2.0).normalized_length < arc_At(1.0).normalized_length);
        CHECK_THROWS_AS(arc_At(-0.5), std::invalid_argument);
    }

    TEST_CASE("acosh1p agrees with arccosh and stays accurate near zero")
    {
        for (double d : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
            CHECK(acosh1p(d) == doctest::Approx(std::acosh(1.0 + d)).epsilon(1e-12));
        }
        // arccosh(1+d) ~ sqrt(2d) for small d; the naive form loses everything
        double d = 1e-18;
        CHECK(acosh1p(d) == doctest::Approx(std::sqrt(2.0 * d)).epsilon(1e-6));
        CHECK(acosh1p(0.0) == 0.0);
    }
}
