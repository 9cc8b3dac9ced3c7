// Harmonic measure on the half-plane: exact boundary-angle formulas, the
// lemma constants around the orbit geometry, and a walk-on-spheres Monte
// Carlo estimator for slit domains H \ Gamma_t.

#pragma once

#include "orbspeed/hypgeo.hpp"
#include "orbspeed/models.hpp"

#include <cstdint>
#include <vector>

namespace orbspeed {

// omega(w, Theta_a, H) where Theta_a = {iy : |y| >= a}: one minus the angle
// subtended at w by the segment (-ia, ia), divided by pi.
double omega_theta_exact(Complex w, double a);

// Same quantity for w = e^{dlog} e^{i theta} and a = 1, stable for any dlog
// (the modulus ratio enters only through dlog).
double omega_theta_log(double dlog, double theta);

// log omega_theta_exact(1, e^L), stable for large L where omega ~ (2/pi) e^{-L}.
double log_omega_at_one(double L);

// omega(rho_s e^{i theta_s}, Gamma*_t, H) >= 1/2: exact value after rescaling
// by the running-minimum modulus min_{sigma >= t} rho_sigma.
double gamma_star_lower(const Orbit& orbit, double t, double s);

// min over {Re w = cos theta} of omega(w, Theta_1, H); positive for
// theta in (0, pi/2).
double c_theta(double theta);

struct SlitPolyline {
    std::vector<Complex> vertices; // ordered by time, all Re > 0
    double t_start = 0.0;
    double s_max = 0.0;
    int refinement = 0;
};

// Discretizes Gamma_t = {rho_s e^{i theta_s} : t <= s <= s_max} so that
// consecutive vertices are at most 1/refinement apart hyperbolically.
SlitPolyline build_slit(const Orbit& orbit, double t, double s_max, int refinement);

struct WosTarget {
    enum Kind { Theta, Slit } kind = Theta;
    double a = 1.0; // Theta only
};

struct HMEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    long n = 0; // walks contributing (requested minus discarded)
    double eps_shell = 0.0;
    long max_steps = 0;
    uint64_t seed = 0;
    double s_max = 0.0; // 0 for plain H
    long discarded = 0;
    bool valid = true; // false if > 0.1% of walks were discarded
};

// Walk-on-spheres estimate of the harmonic measure of the target from
// `start` in H (slit == nullptr) or H minus the slit.  Identical seed and
// inputs give identical estimates for every worker count.
HMEstimate wos_measure(const SlitPolyline* slit, Complex start, WosTarget target,
                       long n, double eps, uint64_t seed,
                       long max_steps = 1000000, int workers = 1);

struct StrongMarkovReport {
    double lhs = 0.0;     // omega(1, Theta_{rho_t}, H), exact
    double rhs = 0.0;     // two-stage decomposition estimate
    double std_err = 0.0; // sample stderr of the per-walk scores
    double diff = 0.0;    // |lhs - rhs|
    bool pass = false;    // diff <= 3 stderr
    long n = 0;
    long discarded = 0;
    long slit_hits = 0;
    uint64_t seed = 0;
    double s_max = 0.0;
    double eps = 0.0;
};

// Decomposition check: walks from 1 in H minus Gamma_t score the indicator of
// Theta_{rho_t} on axis exit and omega_theta_exact(alpha, rho_t) on slit exit
// at alpha (the second stage is integrated analytically).
// s_max = 0 picks the default truncation rho_{s_max} ~ 1000 rho_t.
StrongMarkovReport strong_markov_check(const Orbit& orbit, double t, long n,
                                       double eps, uint64_t seed,
                                       double s_max = 0.0, int refinement = 16,
                                       long max_steps = 1000000, int workers = 1);

// Default truncation time: smallest sampled-orbit-compatible s with
// rho_s >= 1000 rho_t (closed-form models), else the last sample time.
double default_slit_truncation(const Orbit& orbit, double t);

} // namespace orbspeed
