#include "doctest.h"

#include "orbspeed/hypgeo.hpp"
#include "orbspeed/models.hpp"
#include "orbspeed/speeds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace orbspeed;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLog2 = 0.34657359027997264;

LogPolarPoint random_point(std::mt19937_64& rng, double max_log_rho)
{
    std::uniform_real_distribution<double> lr(0.0, max_log_rho);
    std::uniform_real_distribution<double> th(-kPi / 2.0 + 0.01, kPi / 2.0 - 0.01);
    return LogPolarPoint::make(lr(rng), th(rng));
}
} // namespace

TEST_SUITE("speeds")
{
    TEST_CASE("speed triple at a frozen point")
    {
        // u = sqrt(2) e^{i pi/4} = 1 + i
        LogPolarPoint u = LogPolarPoint::make(0.5 * std::log(2.0), kPi / 4.0);
        SpeedTriple tr = speed_triple(u, 1.0);
        CHECK(tr.t == 1.0);
        CHECK(tr.v == doctest::Approx(0.48121182505960347).epsilon(1e-12));
        CHECK(tr.v_o == doctest::Approx(0.17328679513998632).epsilon(1e-12));
        CHECK(tr.v_T == doctest::Approx(0.44068679350977147).epsilon(1e-12));
        // orthogonal speed is half the log modulus, tangential only sees theta
        CHECK(tr.v_o == doctest::Approx(0.5 * u.log_rho).epsilon(1e-14));
        CHECK(tr.v_T == doctest::Approx(tangential_offset(u.theta)).epsilon(1e-14));
    }

    TEST_CASE("speeds survive astronomically large moduli")
    {
        LogPolarPoint u = LogPolarPoint::make(kPi * 1e6, 0.3);
        SpeedTriple tr = speed_triple(u, 1e6);
        CHECK(std::isfinite(tr.v));
        CHECK(tr.v_o == doctest::Approx(0.5 * kPi * 1e6).epsilon(1e-14));
        CHECK(tr.v >= tr.v_o);
        BracketSlack b = pythagoras_slack(u);
        CHECK(std::isfinite(b.lower));
        CHECK(std::isfinite(b.upper));
        CHECK(b.lower >= -1e-9);
        CHECK(b.upper >= -1e-9);
    }

    TEST_CASE("pythagoras bracket holds at random points")
    {
        // v_o + v_T - log(2)/2 <= v <= v_o + v_T for every half-plane point
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 2000; ++i) {
            LogPolarPoint u = random_point(rng, kPi * 1e6);
            BracketSlack b = pythagoras_slack(u);
            CHECK(b.lower >= -1e-9);
            CHECK(b.upper >= -1e-9);
            CHECK(b.lower <= kHalfLog2 + 1e-9); // the two slacks sum to log(2)/2
            SpeedTriple tr = speed_triple(u, 1.0);
            CHECK(b.upper == doctest::Approx(tr.v_o + tr.v_T - tr.v).epsilon(1e-6));
        }
    }

    TEST_CASE("euclidean rate slacks hold at random points")
    {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 2000; ++i) {
            LogPolarPoint u = random_point(rng, 40.0);
            EuclidSlack s = euclid_rate_slack(u);
            CHECK(s.total >= -1e-9);
            CHECK(s.orthogonal >= -1e-9);
            CHECK(s.tangential >= -1e-9);
        }
        // and at huge moduli where naive formulas would overflow
        EuclidSlack s = euclid_rate_slack(LogPolarPoint::make(kPi * 1e6, -1.2));
        CHECK(s.total >= -1e-9);
        CHECK(s.orthogonal >= -1e-9);
        CHECK(s.tangential >= -1e-9);
    }

    TEST_CASE("tangent cap on orbit points")
    {
        for (ModelSpec m : {ModelSpec::sector(kPi / 2.0, kPi / 2.0),
                            ModelSpec::sector(0.3, 1.2), ModelSpec::half_plane()}) {
            Orbit orbit = orbit_grid(m, 1.0, 1e6, 60);
            for (const LogPolarPoint& u : orbit.points)
                CHECK(tangent_cap_slack(u) >= -1e-9);
        }
    }

    TEST_CASE("euclidean rates match the Cayley pull-back")
    {
        LogPolarPoint u = LogPolarPoint::make(0.5 * std::log(2.0), kPi / 4.0); // w = 1+i
        Complex phi = inv_cayley(u.to_complex()).z;
        EuclidRates er = euclid_rates(u);
        CHECK(er.dist_to_tau() == doctest::Approx(std::abs(1.0 - phi)).epsilon(1e-12));
        CHECK(er.one_minus_mod() == doctest::Approx(1.0 - std::abs(phi)).epsilon(1e-12));

        // far out: 1 - |phi| ~ 2 cos(theta) e^{-log rho}, log-domain exact
        LogPolarPoint far = LogPolarPoint::make(kPi * 1e6, 0.3);
        EuclidRates fr = euclid_rates(far);
        CHECK(fr.log_one_minus_mod
              == doctest::Approx(std::log(2.0 * std::cos(0.3)) - kPi * 1e6).epsilon(1e-9));
        CHECK(fr.log_dist_to_tau == doctest::Approx(std::log(2.0) - kPi * 1e6).epsilon(1e-9));
    }

    TEST_CASE("quadrature bounds: parabola closed form and bracket order")
    {
        SpeedBound b = speed_bounds_quadrature(ModelSpec::parabola(2.0), 99.0);
        CHECK(b.method == "convex-quadrature");
        CHECK(b.upper
              == doctest::Approx(2.0 * (std::sqrt(99.75) - std::sqrt(0.75))).epsilon(1e-8));
        CHECK(b.lower == doctest::Approx(0.5 * b.upper).epsilon(1e-12));
        CHECK(b.t == 99.0);

        // exact formula: integral of ds / sqrt(s + 3/4)
        double t = 1e4;
        SpeedBound big = speed_bounds_quadrature(ModelSpec::parabola(2.0), t);
        CHECK(big.upper
              == doctest::Approx(2.0 * (std::sqrt(t + 0.75) - std::sqrt(0.75))).epsilon(1e-8));

        // the convex sector cross-check brackets the true speed
        ModelSpec m = ModelSpec::sector(kPi / 2.0, kPi / 2.0);
        SpeedBound sb = speed_bounds_quadrature(m, 100.0);
        double v = speed_triple(orbit_point(m, 100.0), 100.0).v;
        CHECK(sb.lower <= v + 1e-9);
        CHECK(v <= sb.upper + 1e-9);

        // non-convex region downgrades to the simply-connected bound
        SpeedBound xi = speed_bounds_quadrature(ModelSpec::xi(2.0, 2.0), 100.0);
        CHECK(xi.method == "simply-connected");
        CHECK(xi.lower <= xi.upper);
        CHECK(xi.lower >= 0.0);
    }

    TEST_CASE("asymptote fitting recovers synthetic coefficients")
    {
        std::vector<double> ts, logs, noisy, roots;
        for (int i = 0; i < 50; ++i) {
            double t = std::pow(10.0, 1.0 + 5.0 * i / 49.0);
            ts.push_back(t);
            logs.push_back(3.0 * std::log(t));
            noisy.push_back(3.0 * std::log(t) + 7.0 / t); // decaying correction
            roots.push_back(2.0 * std::sqrt(t));
        }
        AsymptoteFit lf = fit_asymptote(ts, logs, FitShape::LogT);
        CHECK(lf.coefficient == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(lf.shape == FitShape::LogT);
        CHECK(lf.window_hi == doctest::Approx(1e6).epsilon(1e-9));
        CHECK(lf.window_lo == doctest::Approx(std::sqrt(10.0 * 1e6)).epsilon(1e-9));
        CHECK(lf.residual_max <= 1e-12);

        AsymptoteFit nf = fit_asymptote(ts, noisy, FitShape::LogT);
        CHECK(nf.coefficient == doctest::Approx(3.0).epsilon(1e-4));

        AsymptoteFit pf = fit_asymptote(ts, roots, FitShape::Power, 0.5);
        CHECK(pf.coefficient == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(pf.gamma == 0.5);

        CHECK_THROWS_AS(fit_asymptote({1.0, 2.0}, {1.0, 2.0}, FitShape::LogT),
                        std::invalid_argument);
    }
}
