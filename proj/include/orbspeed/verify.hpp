// Theorem-level experiment harness: speed-inequality sweeps, monotonicity
// experiments, good-sequence extraction, rate-of-convergence checks, the
// tangential sandwich, MC-backed harmonic-measure suites, and exploratory
// scans.  Every check emits a VerificationReport with a worst-case margin.

#pragma once

#include "orbspeed/harmonic.hpp"
#include "orbspeed/models.hpp"
#include "orbspeed/speeds.hpp"

#include <string>
#include <vector>

namespace orbspeed {

enum class CheckStatus { Pass, Fail, Flagged };

const char* status_name(CheckStatus s);

struct DetailRow {
    double t;
    double observed;
    double bound;
    std::string label;
};

struct VerificationReport {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    double margin = 0.0; // worst-case slack toward violation
    std::string grid;    // description of the t samples
    std::vector<DetailRow> details;
    std::vector<std::string> notes;

    bool passed() const { return status == CheckStatus::Pass; }
    // Stable key order (name, status, margin, grid, details, notes) so that
    // identical runs serialize byte-identically.
    std::string to_json(int indent = 2) const;
};

std::string describe_grid(const std::vector<double>& grid, GridSpacing spacing);

// The four closed-form models every orbit sweep runs over by default.
std::vector<ModelSpec> default_models();
std::vector<double> default_grid();

// Times t_n (>= 1, pairwise gaps >= 1) whose modulus is a running minimum of
// the whole orbit tail: rho_s >= rho_{t_n} for every later sample s.
std::vector<double> good_sequence(const Orbit& orbit);

// Delta(t) = v_o(inner) - v_o(outer) on the grid for an inclusion pair.
// details[0] = inf Delta row, details[1] = fitted slope row; bound-only outer
// models use the quadrature upper bound on the outer total speed, which makes
// Delta a lower bound (pass stays sound, fail degrades to flagged).
VerificationReport monotonicity_experiment(const ModelSpec& inner,
                                           const ModelSpec& outer,
                                           const std::vector<double>& grid);

struct RateClaim {
    enum Kind { BetsakosHalf, SectorExponent, ParabolaStretched, XiPolynomial } kind;
    double theta = 0.0;
    double eta = 0.0;
    double alpha = 0.0;
    double tolerance = 0.02;

    static RateClaim betsakos_half();
    static RateClaim sector_exponent(double theta, double eta);
    static RateClaim parabola_stretched(double alpha);
    static RateClaim xi_polynomial(double theta, double tolerance = 0.02);
};

VerificationReport rate_check(const ModelSpec& model, const RateClaim& claim,
                              const std::vector<double>& grid);

// Tangential sandwich for Xi(alpha, theta): explicit lower and upper bounding
// expressions, lower <= upper on the grid, and both normalized ends inside
// [1/4 (1-1/alpha) - 0.02, 1/2 (1-1/alpha) + 0.02].
VerificationReport xi_tangential_check(double alpha, double theta,
                                       const std::vector<double>& grid);

struct ScanPoint {
    double t;
    double inf_value;
    double s_at_min;
};

// Exploratory series: for each grid t, the infimum over sampled s >= t of
// omega(rho_s e^{i theta_s}, Theta_{rho_t}, H), evaluated scaling-invariantly.
std::vector<ScanPoint> question_scan(const Orbit& orbit,
                                     const std::vector<double>& grid);

// --- orbit-sweep suites over closed-form models -------------------------

// v_o + v_T - log(2)/2 <= v <= v_o + v_T at every sample (slack 1e-9).
VerificationReport suite_pythagoras(const std::vector<Orbit>& orbits);
// v_T <= v_o + 4 log 2 (slack 1e-9).
VerificationReport suite_julia(const std::vector<Orbit>& orbits);
// The three hyperbolic-vs-Euclidean rate inequalities (slack 1e-9).
VerificationReport suite_ipereucl(const std::vector<Orbit>& orbits);
// rho_t cos(theta_t) nondecreasing (relative slack 1e-9).
VerificationReport suite_dwmono(const std::vector<Orbit>& orbits);
// v(t2) >= v(t1) implies log rho(t2) >= log rho(t1) - 1e-9 over all pairs.
VerificationReport suite_totalimpliesortho(const std::vector<Orbit>& orbits);
// |v_o(t) + (1/2) log omega(1, Theta_{rho_t}, H)| <= 1 once rho_t > 3.
VerificationReport suite_harmonic_bridge(const std::vector<Orbit>& orbits);

// --- MC-backed suites ----------------------------------------------------

struct McParams {
    long n = 200000;
    double eps = 1e-4;
    uint64_t seed = 42;
    double s_max = 0.0; // 0 = automatic truncation
    long max_steps = 1000000;
    int refinement = 16;
    int workers = 1;
    bool truncation_check = true; // rerun at 2 s_max, require < 3 stderr drift
};

// omega(1, Theta_t, H) < 2 (mhat + 3 stderr) for the slit estimate.
VerificationReport suite_hall(const std::vector<ModelSpec>& models,
                              const std::vector<double>& ts, const McParams& mc);

// |LHS - RHS| <= 3 stderr for the two-stage decomposition estimator.
VerificationReport suite_markov(const std::vector<ModelSpec>& models, double t,
                                const McParams& mc);

// gamma_star_lower >= 1/2 - 1e-12 on an n x n (t, s) grid per orbit.
VerificationReport suite_gammastar(const std::vector<Orbit>& orbits, size_t n);

// Synthetic probe orbit with oscillating angle and rho cos(theta) = 1 + s.
Orbit synthetic_oscillating_orbit(double t_min, double t_max, size_t n);

} // namespace orbspeed
