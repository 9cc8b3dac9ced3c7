#include "orbspeed/verify.hpp"
#include "orbspeed/numerics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace orbspeed {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLog2 = 0.34657359027997264; // log(2)/2
constexpr double kSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string orbit_label(const Orbit& o)
{
    return o.model ? o.model->describe() : std::string("synthetic");
}

std::string describe_times(const std::vector<double>& t)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu samples in [%g, %g]", t.size(),
                  t.empty() ? 0.0 : t.front(), t.empty() ? 0.0 : t.back());
    return buf;
}

// Track the minimum slack together with the row that attains it.
struct WorstRow {
    double slack = kInf;
    DetailRow row;

    void offer(double s, DetailRow r)
    {
        if (s < slack) {
            slack = s;
            row = std::move(r);
        }
    }
};

CheckStatus status_from_margin(double margin, double tol)
{
    return margin >= -tol ? CheckStatus::Pass : CheckStatus::Fail;
}

// Minimum consecutive increment of a sequence, relative to max(1, |value|).
double min_relative_increment(const std::vector<double>& x)
{
    double worst = kInf;
    for (size_t i = 0; i + 1 < x.size(); ++i)
        worst = std::min(worst,
                         (x[i + 1] - x[i]) / std::max(1.0, std::abs(x[i])));
    return worst;
}

// Affine slope of y against log t over the top decade of the window (widened
// to the upper half when the grid is too coarse to put 4 points there).
double top_decade_slope(const std::vector<double>& t, const std::vector<double>& y)
{
    double cut = t.back() / 10.0;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] >= cut) {
            xs.push_back(std::log(t[i]));
            ys.push_back(y[i]);
        }
    if (xs.size() < 4) {
        xs.clear();
        ys.clear();
        double half = std::sqrt(t.front() * t.back());
        for (size_t i = 0; i < t.size(); ++i)
            if (t[i] >= half) {
                xs.push_back(std::log(t[i]));
                ys.push_back(y[i]);
            }
    }
    if (xs.size() < 2)
        throw std::invalid_argument("slope fit needs at least 2 samples in the window");
    return fit_affine(xs, ys).first; // (slope, intercept)
}

} // namespace

const char* status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    default:
        return "flagged";
    }
}

std::string VerificationReport::to_json(int indent) const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["status"] = status_name(status);
    j["margin"] = margin;
    j["grid"] = grid;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& d : details) {
        nlohmann::ordered_json r;
        r["t"] = d.t;
        r["observed"] = d.observed;
        r["bound"] = d.bound;
        r["label"] = d.label;
        rows.push_back(std::move(r));
    }
    j["details"] = std::move(rows);
    j["notes"] = notes;
    return j.dump(indent);
}

std::string describe_grid(const std::vector<double>& grid, GridSpacing spacing)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu %s-spaced t in [%g, %g]", grid.size(),
                  spacing == GridSpacing::Log ? "log" : "linear",
                  grid.empty() ? 0.0 : grid.front(),
                  grid.empty() ? 0.0 : grid.back());
    return buf;
}

std::vector<ModelSpec> default_models()
{
    return {ModelSpec::sector(kPi / 2, kPi / 2), ModelSpec::sector(kPi / 4, kPi / 4),
            ModelSpec::strip(1.0), ModelSpec::half_plane()};
}

std::vector<double> default_grid()
{
    return make_grid(1.0, 1e6, 200, GridSpacing::Log);
}

std::vector<double> good_sequence(const Orbit& orbit)
{
    size_t n = orbit.size();
    std::vector<double> later_min(n, kInf); // min log rho over strictly later samples
    double running = kInf;
    for (size_t i = n; i-- > 0;) {
        later_min[i] = running;
        running = std::min(running, orbit.points[i].log_rho);
    }
    std::vector<double> out;
    double last = -kInf;
    for (size_t i = 0; i < n; ++i) {
        if (orbit.times[i] < 1.0)
            continue;
        double m = later_min[i];
        double tol = kSlack * std::max(1.0, std::isfinite(m) ? std::abs(m) : 1.0);
        if (orbit.points[i].log_rho <= m + tol && orbit.times[i] >= last + 1.0) {
            out.push_back(orbit.times[i]);
            last = orbit.times[i];
        }
    }
    return out;
}

VerificationReport monotonicity_experiment(const ModelSpec& inner,
                                           const ModelSpec& outer,
                                           const std::vector<double>& grid)
{
    inner.validate();
    outer.validate();
    if (!inner.closed_form())
        throw std::invalid_argument("monotonicity_experiment: inner model must be closed-form");
    if (!inclusion_check(inner, outer))
        throw std::invalid_argument("monotonicity_experiment: inclusion fails for " +
                                    inner.describe() + " inside " + outer.describe());
    const bool outer_exact = outer.closed_form();

    VerificationReport rep;
    rep.name = "orthogonal-monotonicity";
    rep.grid = describe_times(grid);
    rep.notes.push_back("inner=" + inner.describe() + " outer=" + outer.describe());

    Orbit orbit_in = orbit_at_times(inner, grid);
    Orbit orbit_out;
    if (outer_exact)
        orbit_out = orbit_at_times(outer, grid);

    std::vector<double> delta(grid.size());
    std::vector<double> v_in(grid.size()), vo_out(grid.size());
    double max_abs_theta_in = 0.0, max_abs_theta_out = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        SpeedTriple in = speed_triple(orbit_in.points[i], grid[i]);
        v_in[i] = in.v;
        max_abs_theta_in = std::max(max_abs_theta_in, std::abs(orbit_in.points[i].theta));
        if (outer_exact) {
            SpeedTriple out = speed_triple(orbit_out.points[i], grid[i]);
            vo_out[i] = out.v_o;
            max_abs_theta_out =
                std::max(max_abs_theta_out, std::abs(orbit_out.points[i].theta));
        } else {
            vo_out[i] = speed_bounds_quadrature(outer, grid[i]).upper;
        }
        delta[i] = in.v_o - vo_out[i];
    }

    double inf_delta = kInf, inf_t = grid.front();
    for (size_t i = 0; i < grid.size(); ++i)
        if (delta[i] < inf_delta) {
            inf_delta = delta[i];
            inf_t = grid[i];
        }
    double slope = top_decade_slope(grid, delta);

    rep.details.push_back({inf_t, inf_delta, 0.0, "inf of delta over the grid"});
    rep.details.push_back({grid.back(), slope, -0.02,
                           "slope of delta against log t over the top decade"});

    // hypothesis classification
    std::vector<std::string> hyps;
    const double nontangential = kPi / 2 - 0.01;
    if (max_abs_theta_in <= nontangential)
        hyps.push_back("(1) inner orbit converges non-tangentially");
    if (outer_exact) {
        if (max_abs_theta_out <= nontangential)
            hyps.push_back("(2) outer orbit converges non-tangentially");
        std::vector<double> lr(grid.size()), vv(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            lr[i] = orbit_out.points[i].log_rho;
            vv[i] = speed_triple(orbit_out.points[i], grid[i]).v;
        }
        if (min_relative_increment(lr) >= -kSlack)
            hyps.push_back("(3) outer orthogonal speed nondecreasing");
        if (min_relative_increment(vv) >= -kSlack)
            hyps.push_back("(4) outer total speed nondecreasing");
    } else if (outer.convex()) {
        hyps.push_back("(4) outer total speed nondecreasing (convex, hence starlike, image)");
    }
    for (const auto& h : hyps)
        rep.notes.push_back("hypothesis " + h);

    double margin = std::min(inf_delta, slope + 0.02);

    if (outer_exact) {
        // inclusion-pair rate inequality: outer v_o <= inner v + log(2)/2
        WorstRow betcd;
        for (size_t i = 0; i < grid.size(); ++i) {
            double slack = v_in[i] + kHalfLog2 - vo_out[i];
            betcd.offer(slack, {grid[i], vo_out[i], v_in[i] + kHalfLog2,
                                "outer v_o vs inner v + log(2)/2"});
        }
        rep.details.push_back(betcd.row);
        margin = std::min(margin, betcd.slack);
    } else {
        rep.notes.push_back(
            "outer model is bound-only: delta uses the quadrature upper bound on the "
            "outer total speed, so delta is a lower bound for the true gap");
    }

    rep.margin = margin;
    if (hyps.empty()) {
        rep.status = CheckStatus::Flagged;
        rep.notes.push_back("no monotonicity hypothesis applies; liminf evidence unavailable");
        if (outer_exact) {
            std::vector<double> gseq = good_sequence(orbit_out);
            double sup = -kInf, sup_t = grid.front();
            for (double tg : gseq) {
                size_t idx = orbit_out.index_of(tg);
                if (delta[idx] > sup) {
                    sup = delta[idx];
                    sup_t = tg;
                }
            }
            if (!gseq.empty()) {
                rep.details.push_back({sup_t, sup, 0.0,
                                       "sup of delta over the good-sequence times (limsup evidence)"});
                rep.notes.push_back("good-sequence times available: " +
                                    std::to_string(gseq.size()));
            }
        } else {
            rep.notes.push_back("good-sequence limsup check unavailable (outer orbit bound-only)");
        }
    } else if (margin >= -kSlack) {
        rep.status = CheckStatus::Pass;
    } else if (!outer_exact) {
        rep.status = CheckStatus::Flagged; // a weak lower bound cannot certify failure
        rep.notes.push_back("negative margin under a bound-only outer model is inconclusive");
    } else {
        rep.status = CheckStatus::Fail;
    }
    return rep;
}

RateClaim RateClaim::betsakos_half()
{
    return {BetsakosHalf, 0, 0, 0, 0.02};
}

RateClaim RateClaim::sector_exponent(double theta, double eta)
{
    return {SectorExponent, theta, eta, 0, 0.02};
}

RateClaim RateClaim::parabola_stretched(double alpha)
{
    return {ParabolaStretched, 0, 0, alpha, 0.05};
}

RateClaim RateClaim::xi_polynomial(double theta, double tolerance)
{
    return {XiPolynomial, theta, 0, 0, tolerance};
}

namespace {

void check_betsakos(VerificationReport& rep, const ModelSpec& model,
                    const std::vector<double>& grid)
{
    if (!model.closed_form())
        throw std::invalid_argument("rate_check: betsakos_half needs a closed-form model");
    Orbit orbit = orbit_at_times(model, grid);
    std::vector<double> y(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        EuclidRates r = euclid_rates(orbit.points[i]);
        y[i] = std::exp(r.log_dist_to_tau + 0.5 * std::log(grid[i]));
    }
    double sup = -kInf, sup_t = grid.front();
    for (size_t i = 0; i < grid.size(); ++i)
        if (y[i] > sup) {
            sup = y[i];
            sup_t = grid[i];
        }
    double mid = std::sqrt(grid.front() * grid.back());
    WorstRow tail;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i] < mid)
            continue;
        tail.offer(y[i] - y[i + 1],
                   {grid[i + 1], y[i + 1], y[i], "t^(1/2) |1-phi| non-increasing tail"});
    }
    rep.details.push_back({sup_t, sup, sup, "sup of t^(1/2) |1-phi| (finite)"});
    rep.details.push_back(tail.row);
    rep.notes.push_back("betsakos_half on " + model.describe() + ": sup " + fmt_num(sup) +
                        " at t=" + fmt_num(sup_t));
    rep.margin = std::min(rep.margin, tail.slack);
}

void check_sector_exponent(VerificationReport& rep, double theta, double eta,
                           const std::vector<double>& grid)
{
    ModelSpec sec = ModelSpec::sector(theta, eta);
    Orbit orbit = orbit_at_times(sec, grid);
    std::vector<double> vo(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        vo[i] = speed_triple(orbit.points[i], grid[i]).v_o;
    AsymptoteFit fit = fit_asymptote(grid, vo, FitShape::LogT);
    double predicted = kPi / (2.0 * (theta + eta));
    double dev = std::abs(fit.coefficient / predicted - 1.0);
    rep.details.push_back({grid.back(), fit.coefficient, predicted,
                           "v_o / log t fit for " + sec.describe()});
    rep.margin = std::min(rep.margin, 0.02 - dev);
}

void check_parabola_stretched(VerificationReport& rep, const ModelSpec& model,
                              const std::vector<double>& grid)
{
    if (model.kind != ModelKind::Parabola)
        throw std::invalid_argument("rate_check: parabola_stretched needs a parabola model");
    double a = model.alpha;
    double coeff = a / (2.0 * (a - 1.0));
    double cut = grid.back() / 10.0;
    WorstRow worst;
    bool any = false;
    for (double t : grid) {
        if (t < cut)
            continue;
        any = true;
        SpeedBound b = speed_bounds_quadrature(model, t);
        double pred = coeff * std::pow(t, 1.0 - 1.0 / a);
        double dev = std::abs(b.lower / pred - 1.0);
        worst.offer(0.05 - dev, {t, b.lower, pred, "quadrature lower bound vs stretched rate"});
    }
    if (!any)
        throw std::invalid_argument("rate_check: grid has no samples in the top decade");
    rep.details.push_back(worst.row);
    rep.notes.push_back("parabola_stretched coefficient alpha/(2(alpha-1)) = " + fmt_num(coeff));
    rep.margin = std::min(rep.margin, worst.slack);
}

void check_xi_polynomial(VerificationReport& rep, double theta, double tolerance,
                         const std::vector<double>& grid)
{
    const double etas[] = {0.2, 0.1, 0.05, 0.0};
    double prev_coeff = -kInf;
    for (double eta : etas) {
        ModelSpec sec = ModelSpec::sector(theta, eta);
        Orbit orbit = orbit_at_times(sec, grid);
        std::vector<double> vo(grid.size());
        for (size_t i = 0; i < grid.size(); ++i)
            vo[i] = speed_triple(orbit.points[i], grid[i]).v_o;
        AsymptoteFit fit = fit_asymptote(grid, vo, FitShape::LogT);
        double predicted = kPi / (2.0 * (theta + eta));
        double dev = std::abs(fit.coefficient / predicted - 1.0);
        rep.details.push_back({grid.back(), fit.coefficient, predicted,
                               "v_o / log t fit for " + sec.describe()});
        rep.margin = std::min(rep.margin, tolerance - dev);
        // narrowing the extra aperture eta must push the fitted coefficient
        // back up toward pi/(2 theta)
        if (std::isfinite(prev_coeff))
            rep.margin = std::min(rep.margin, fit.coefficient - prev_coeff + 1e-6);
        prev_coeff = fit.coefficient;
    }
    double full = kPi / (2.0 * theta);
    rep.notes.push_back("sandwich width pi/(2 theta) - pi/(2(theta+eta)) at eta=0.05: " +
                        fmt_num(full - kPi / (2.0 * (theta + 0.05))));
    rep.notes.push_back("the sandwich closes onto pi/(2 theta) = " + fmt_num(full) +
                        " as eta shrinks");
}

} // namespace

VerificationReport rate_check(const ModelSpec& model, const RateClaim& claim,
                              const std::vector<double>& grid)
{
    model.validate();
    if (grid.size() < 8)
        throw std::invalid_argument("rate_check: at least 8 grid samples required");
    VerificationReport rep;
    rep.name = "rate-claims";
    rep.grid = describe_times(grid);
    rep.margin = kInf;
    switch (claim.kind) {
    case RateClaim::BetsakosHalf:
        check_betsakos(rep, model, grid);
        break;
    case RateClaim::SectorExponent:
        if (model.kind != ModelKind::Sector)
            throw std::invalid_argument("rate_check: sector_exponent needs a sector model");
        check_sector_exponent(rep, claim.theta > 0 || claim.eta > 0 ? claim.theta : model.theta,
                              claim.theta > 0 || claim.eta > 0 ? claim.eta : model.eta, grid);
        break;
    case RateClaim::ParabolaStretched:
        check_parabola_stretched(rep, model, grid);
        break;
    case RateClaim::XiPolynomial:
        if (model.kind != ModelKind::Xi)
            throw std::invalid_argument("rate_check: xi_polynomial needs a xi model");
        check_xi_polynomial(rep, claim.theta > 0 ? claim.theta : model.theta,
                            claim.tolerance, grid);
        break;
    }
    rep.status = status_from_margin(rep.margin, kSlack);
    return rep;
}

VerificationReport xi_tangential_check(double alpha, double theta,
                                       const std::vector<double>& grid)
{
    ModelSpec::xi(alpha, theta).validate();
    if (grid.empty())
        throw std::invalid_argument("xi_tangential_check: empty grid");

    VerificationReport rep;
    rep.name = "xi-tangential-sandwich";
    rep.grid = describe_times(grid);

    double inv_sin_half = 1.0 / std::sin(theta / 2.0);
    WorstRow order;
    double lower_top = 0.0, upper_top = 0.0;
    for (double t : grid) {
        double delta = delta_parabola(t, alpha);
        double arg = t / delta - inv_sin_half;
        if (arg <= -1.0)
            throw std::invalid_argument(
                "xi_tangential_check: t too small for the lower-bound expression");
        double lower = 0.25 * std::log1p(arg);
        double beta = std::atan(delta / t);
        double scaled = (kPi / theta) * beta;
        if (scaled >= kPi)
            throw std::invalid_argument(
                "xi_tangential_check: t too small for the upper-bound expression");
        double upper = 1.0 + 0.5 * std::log(1.0 / std::sin(scaled));
        order.offer(upper - lower, {t, lower, upper, "lower bound vs upper bound"});
        if (t == grid.back()) {
            lower_top = lower;
            upper_top = upper;
        }
    }
    double logt = std::log(grid.back());
    double target_lo = 0.25 * (1.0 - 1.0 / alpha);
    double target_hi = 0.50 * (1.0 - 1.0 / alpha);
    double dev_lo = std::abs(lower_top / logt - target_lo);
    double dev_hi = std::abs(upper_top / logt - target_hi);

    rep.details.push_back(order.row);
    rep.details.push_back({grid.back(), lower_top / logt, target_lo,
                           "lower / log t at the top of the grid"});
    rep.details.push_back({grid.back(), upper_top / logt, target_hi,
                           "upper / log t at the top of the grid"});
    rep.notes.push_back("targets are (1/4)(1-1/alpha) and (1/2)(1-1/alpha), window 0.02");

    rep.margin = std::min({order.slack, 0.02 - dev_lo, 0.02 - dev_hi});
    rep.status = status_from_margin(rep.margin, kSlack);
    return rep;
}

std::vector<ScanPoint> question_scan(const Orbit& orbit,
                                     const std::vector<double>& grid)
{
    std::vector<ScanPoint> out;
    out.reserve(grid.size());
    for (double t : grid) {
        size_t it = orbit.index_of(t); // throws on coverage failure
        double lt = orbit.points[it].log_rho;
        double best = kInf, best_s = orbit.times[it];
        for (size_t j = it; j < orbit.size(); ++j) {
            double w = omega_theta_log(orbit.points[j].log_rho - lt,
                                       orbit.points[j].theta);
            if (w < best) {
                best = w;
                best_s = orbit.times[j];
            }
        }
        out.push_back({t, best, best_s});
    }
    return out;
}

namespace {

VerificationReport orbit_sweep(const char* name, const std::vector<Orbit>& orbits,
                               double tol,
                               void (*check)(const Orbit&, WorstRow&))
{
    if (orbits.empty())
        throw std::invalid_argument("orbit sweep: no orbits supplied");
    VerificationReport rep;
    rep.name = name;
    rep.grid = describe_times(orbits.front().times);
    double margin = kInf;
    for (const auto& orbit : orbits) {
        WorstRow worst;
        check(orbit, worst);
        worst.row.label = orbit_label(orbit) + ": " + worst.row.label;
        rep.details.push_back(worst.row);
        margin = std::min(margin, worst.slack);
    }
    rep.margin = margin;
    rep.status = status_from_margin(margin, tol);
    char buf[64];
    std::snprintf(buf, sizeof buf, "tolerance %g", tol);
    rep.notes.push_back(buf);
    return rep;
}

} // namespace

VerificationReport suite_pythagoras(const std::vector<Orbit>& orbits)
{
    return orbit_sweep("pythagoras-bracket", orbits, kSlack,
                       [](const Orbit& o, WorstRow& worst) {
                           for (size_t i = 0; i < o.size(); ++i) {
                               BracketSlack s = pythagoras_slack(o.points[i]);
                               SpeedTriple tr = speed_triple(o.points[i], o.times[i]);
                               worst.offer(s.lower, {o.times[i], tr.v,
                                                     tr.v_o + tr.v_T - kHalfLog2,
                                                     "v above v_o + v_T - log(2)/2"});
                               worst.offer(s.upper, {o.times[i], tr.v, tr.v_o + tr.v_T,
                                                     "v below v_o + v_T"});
                           }
                       });
}

VerificationReport suite_julia(const std::vector<Orbit>& orbits)
{
    return orbit_sweep("julia-tangential-cap", orbits, kSlack,
                       [](const Orbit& o, WorstRow& worst) {
                           for (size_t i = 0; i < o.size(); ++i) {
                               SpeedTriple tr = speed_triple(o.points[i], o.times[i]);
                               worst.offer(tangent_cap_slack(o.points[i]),
                                           {o.times[i], tr.v_T,
                                            tr.v_o + 4.0 * 2.0 * kHalfLog2,
                                            "v_T below v_o + 4 log 2"});
                           }
                       });
}

VerificationReport suite_ipereucl(const std::vector<Orbit>& orbits)
{
    return orbit_sweep(
        "euclid-rates", orbits, kSlack, [](const Orbit& o, WorstRow& worst) {
            for (size_t i = 0; i < o.size(); ++i) {
                EuclidSlack s = euclid_rate_slack(o.points[i]);
                double t = o.times[i];
                worst.offer(s.total, {t, kHalfLog2 - s.total, kHalfLog2,
                                      "|v - (1/2) log 1/(1-|phi|)| within log(2)/2"});
                worst.offer(s.orthogonal, {t, kHalfLog2 - s.orthogonal, kHalfLog2,
                                           "|v_o - (1/2) log 1/|1-phi|| within log(2)/2"});
                worst.offer(s.tangential,
                            {t, 3.0 * kHalfLog2 - s.tangential, 3.0 * kHalfLog2,
                             "|v_T - (1/2) log |1-phi|/(1-|phi|)| within (3/2) log 2"});
            }
        });
}

VerificationReport suite_dwmono(const std::vector<Orbit>& orbits)
{
    return orbit_sweep("denjoy-wolff-monotonicity", orbits, kSlack,
                       [](const Orbit& o, WorstRow& worst) {
                           for (size_t i = 0; i + 1 < o.size(); ++i) {
                               double a = o.points[i].log_rho +
                                          std::log(std::cos(o.points[i].theta));
                               double b = o.points[i + 1].log_rho +
                                          std::log(std::cos(o.points[i + 1].theta));
                               double rel = (b - a) / std::max(1.0, std::abs(a));
                               worst.offer(rel, {o.times[i + 1], b, a,
                                                 "log(rho cos theta) nondecreasing"});
                           }
                       });
}

VerificationReport suite_totalimpliesortho(const std::vector<Orbit>& orbits)
{
    return orbit_sweep(
        "total-implies-orthogonal", orbits, kSlack,
        [](const Orbit& o, WorstRow& worst) {
            std::vector<double> v(o.size());
            for (size_t i = 0; i < o.size(); ++i)
                v[i] = speed_triple(o.points[i], o.times[i]).v;
            double slack = kInf;
            DetailRow row{o.times.back(), 0.0, 0.0, "v(t2) >= v(t1) implies log rho(t2) >= log rho(t1)"};
            for (size_t i = 0; i < o.size(); ++i)
                for (size_t j = i + 1; j < o.size(); ++j) {
                    if (v[j] < v[i])
                        continue;
                    double s = (o.points[j].log_rho - o.points[i].log_rho) /
                               std::max(1.0, std::abs(o.points[i].log_rho));
                    if (s < slack) {
                        slack = s;
                        row.t = o.times[j];
                        row.observed = o.points[j].log_rho;
                        row.bound = o.points[i].log_rho;
                    }
                }
            worst.offer(slack, row);
        });
}

VerificationReport suite_harmonic_bridge(const std::vector<Orbit>& orbits)
{
    VerificationReport rep =
        orbit_sweep("harmonic-bridge", orbits, kSlack,
                    [](const Orbit& o, WorstRow& worst) {
                        const double log3 = 1.0986122886681098;
                        for (size_t i = 0; i < o.size(); ++i) {
                            double L = o.points[i].log_rho;
                            if (L <= log3)
                                continue;
                            // v_o + (1/2) log omega = (1/2)(L + log omega)
                            double val =
                                std::abs(0.5 * (L + log_omega_at_one(L)));
                            worst.offer(1.0 - val, {o.times[i], val, 1.0,
                                                    "|v_o + (1/2) log omega(1,Theta,H)| within 1"});
                        }
                    });
    rep.notes.push_back("samples restricted to rho_t > 3");
    return rep;
}

VerificationReport suite_hall(const std::vector<ModelSpec>& models,
                              const std::vector<double>& ts, const McParams& mc)
{
    VerificationReport rep;
    rep.name = "hall-inequality";
    rep.grid = describe_times(ts);
    double margin = kInf;
    for (const auto& model : models) {
        for (double t : ts) {
            double lt = orbit_point(model, t).log_rho;
            double rho_t = std::exp(lt);
            double s_max = mc.s_max > 0.0
                               ? mc.s_max
                               : time_for_log_modulus(model, lt + std::log(1000.0));
            Orbit orbit = orbit_grid(model, t, s_max, 65, GridSpacing::Log);
            SlitPolyline slit = build_slit(orbit, t, s_max, mc.refinement);
            HMEstimate est =
                wos_measure(&slit, Complex{1.0, 0.0}, WosTarget{WosTarget::Slit, 0.0},
                            mc.n, mc.eps, mc.seed, mc.max_steps, mc.workers);
            double lhs = omega_theta_exact(Complex{1.0, 0.0}, rho_t);
            double bound = 2.0 * (est.mean + 3.0 * est.std_err);
            std::string tag = model.describe() + " t=" + fmt_num(t);
            rep.details.push_back(
                {t, lhs, bound, tag + ": omega(1,Theta,H) below 2(mhat + 3 stderr)"});
            margin = std::min(margin, bound - lhs);
            if (!est.valid) {
                margin = std::min(margin, -1.0);
                rep.notes.push_back(tag + ": estimate invalid (too many walks discarded)");
            }
            if (mc.truncation_check) {
                Orbit orbit2 = orbit_grid(model, t, 2.0 * s_max, 65, GridSpacing::Log);
                SlitPolyline slit2 = build_slit(orbit2, t, 2.0 * s_max, mc.refinement);
                HMEstimate est2 = wos_measure(&slit2, Complex{1.0, 0.0},
                                              WosTarget{WosTarget::Slit, 0.0}, mc.n,
                                              mc.eps, mc.seed, mc.max_steps, mc.workers);
                double drift = std::abs(est.mean - est2.mean);
                rep.details.push_back({t, drift, 3.0 * est.std_err,
                                       tag + ": truncation drift below 3 stderr"});
                margin = std::min(margin, 3.0 * est.std_err - drift);
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%ld eps=%g seed=%llu", mc.n, mc.eps,
                  (unsigned long long)mc.seed);
    rep.notes.push_back(buf);
    rep.margin = margin;
    rep.status = margin > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport suite_markov(const std::vector<ModelSpec>& models, double t,
                                const McParams& mc)
{
    VerificationReport rep;
    rep.name = "strong-markov";
    double margin = kInf;
    for (const auto& model : models) {
        double lt = orbit_point(model, t).log_rho;
        double s_max = mc.s_max > 0.0
                           ? mc.s_max
                           : time_for_log_modulus(model, lt + std::log(1000.0));
        Orbit orbit = orbit_grid(model, t, s_max, 65, GridSpacing::Log);
        StrongMarkovReport r = strong_markov_check(orbit, t, mc.n, mc.eps, mc.seed,
                                                   s_max, mc.refinement, mc.max_steps,
                                                   mc.workers);
        std::string tag = model.describe() + " t=" + fmt_num(t);
        rep.details.push_back(
            {t, r.diff, 3.0 * r.std_err, tag + ": |LHS - RHS| within 3 stderr"});
        rep.notes.push_back(tag + ": lhs=" + fmt_num(r.lhs) + " rhs=" + fmt_num(r.rhs) +
                            " slit_hits=" + std::to_string(r.slit_hits));
        margin = std::min(margin, 3.0 * r.std_err - r.diff);
        if (r.discarded * 1000 > r.n + r.discarded) {
            margin = std::min(margin, -1.0);
            rep.notes.push_back(tag + ": estimate invalid (too many walks discarded)");
        }
    }
    rep.grid = "single t=" + fmt_num(t);
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%ld eps=%g seed=%llu", mc.n, mc.eps,
                  (unsigned long long)mc.seed);
    rep.notes.push_back(buf);
    rep.margin = margin;
    rep.status = margin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport suite_gammastar(const std::vector<Orbit>& orbits, size_t n)
{
    if (orbits.empty())
        throw std::invalid_argument("gamma-star suite: no orbits supplied");
    VerificationReport rep;
    rep.name = "gamma-star-lower-bound";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu x %zu (t, s) pairs per orbit", n, n);
    rep.grid = buf;
    double margin = kInf;
    for (const auto& orbit : orbits) {
        WorstRow worst;
        size_t m = orbit.size();
        size_t count = std::min(n, m);
        for (size_t a = 0; a < count; ++a) {
            size_t ia = a * (m - 1) / std::max<size_t>(1, count - 1);
            for (size_t b = a; b < count; ++b) {
                size_t ib = b * (m - 1) / std::max<size_t>(1, count - 1);
                if (ib < ia)
                    continue;
                double w = gamma_star_lower(orbit, orbit.times[ia], orbit.times[ib]);
                worst.offer(w - 0.5,
                            {orbit.times[ib], w, 0.5, "omega against Gamma* at least 1/2"});
            }
        }
        worst.row.label = orbit_label(orbit) + ": " + worst.row.label;
        rep.details.push_back(worst.row);
        margin = std::min(margin, worst.slack);
    }
    rep.margin = margin;
    rep.status = status_from_margin(margin, 1e-12);
    rep.notes.push_back("tolerance 1e-12");
    return rep;
}

Orbit synthetic_oscillating_orbit(double t_min, double t_max, size_t n)
{
    std::vector<OrbitRow> rows;
    rows.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        double s = t_min + (t_max - t_min) * double(i) / double(n - 1);
        double theta = 1.2 * std::sin(2.0 * s);
        // rho cos(theta) = 1 + s exactly, so the half-plane Julia invariant
        // holds while rho itself oscillates
        double log_rho = std::log1p(s) - std::log(std::cos(theta));
        rows.push_back({s, log_rho, theta});
    }
    return ingest_orbit(rows);
}

} // namespace orbspeed
