// Speed triples v, v_o (orthogonal), v_T (tangential) of an orbit point,
// Euclidean rate quantities |1 - phi| and 1 - |phi| in the log domain, the
// two-sided quadrature speed bounds for bound-only models, and asymptote
// fitting.

#pragma once

#include "orbspeed/domains.hpp"
#include "orbspeed/hypgeo.hpp"

#include <string>
#include <vector>

namespace orbspeed {

struct SpeedTriple {
    double t;
    double v;   // total speed  k(1, u_t)
    double v_o; // orthogonal   k(1, rho_t)
    double v_T; // tangential   k(rho_t, u_t)
};

SpeedTriple speed_triple(LogPolarPoint u, double t);

struct EuclidRates {
    double log_dist_to_tau;   // log |1 - phi|
    double log_one_minus_mod; // log (1 - |phi|)

    double dist_to_tau() const { return std::exp(log_dist_to_tau); }
    double one_minus_mod() const { return std::exp(log_one_minus_mod); }
};

EuclidRates euclid_rates(LogPolarPoint u);

// Slack (bound minus |deviation|) of the two-sided speed bracket
// v_o + v_T - log(2)/2 <= v <= v_o + v_T, computed without large-modulus
// cancellation.  Both entries nonnegative iff the bracket holds.
struct BracketSlack {
    double lower; // v - (v_o + v_T - log(2)/2)
    double upper; // (v_o + v_T) - v
};
BracketSlack pythagoras_slack(LogPolarPoint u);

// Slack of |v_T| <= v_o + 4 log 2.
double tangent_cap_slack(LogPolarPoint u);

// Slacks of the three hyperbolic-vs-Euclidean rate inequalities
// |v - (1/2) log(1/(1-|phi|))|      <= (1/2) log 2
// |v_o - (1/2) log(1/|1-phi|)|      <= (1/2) log 2
// |v_T - (1/2) log(|1-phi|/(1-|phi|))| <= (3/2) log 2
struct EuclidSlack {
    double total;
    double orthogonal;
    double tangential;
};
EuclidSlack euclid_rate_slack(LogPolarPoint u);

struct SpeedBound {
    double t;
    double lower;
    double upper;
    std::string method; // "convex-quadrature" or "simply-connected"
};

// Two-sided bound on the total speed along the vertical orbit ray of a
// bound-only (or sector, as cross-check) model.
SpeedBound speed_bounds_quadrature(const ModelSpec& model, double t);

enum class FitShape { LogT, Power };

struct AsymptoteFit {
    FitShape shape = FitShape::LogT;
    double gamma = 0.0; // exponent for Power
    double coefficient = 0.0;
    double residual_max = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// Least-squares coefficient of value against log t (or t^gamma) over the
// upper half of the sample window (in log t).
AsymptoteFit fit_asymptote(const std::vector<double>& t,
                           const std::vector<double>& value,
                           FitShape shape, double gamma = 1.0);

} // namespace orbspeed
