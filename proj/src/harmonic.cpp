#include "orbspeed/harmonic.hpp"
#include "orbspeed/numerics.hpp"
#include "orbspeed/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace orbspeed {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double omega_theta_exact(Complex w, double a)
{
    if (!(w.real() > 0.0))
        throw std::invalid_argument("omega_theta_exact: Re w > 0 required");
    if (!(a > 0.0))
        throw std::invalid_argument("omega_theta_exact: a > 0 required");
    double x = w.real(), y = w.imag();
    double psi = std::atan2(2.0 * a * x, x * x + y * y - a * a);
    return 1.0 - psi / kPi;
}

double omega_theta_log(double dlog, double theta)
{
    double c = std::cos(theta);
    if (dlog > 40.0)
        return 1.0 - 2.0 * c * std::exp(-dlog) / kPi;
    double rho = std::exp(dlog);
    // omega = atan2(2 rho cos theta, 1 - rho^2) / pi with 1 - rho^2 =
    // -expm1(2 dlog): exact through rho ~ 1 and cancellation-free near rho = 0
    return std::atan2(2.0 * rho * c, -std::expm1(2.0 * dlog)) / kPi;
}

double log_omega_at_one(double L)
{
    if (L > 40.0)
        return std::log(2.0 / kPi) - L;
    // omega(1, Theta_{e^L}) = omega(e^{-L}, Theta_1) by scaling
    return std::log(omega_theta_log(-L, 0.0));
}

double gamma_star_lower(const Orbit& orbit, double t, double s)
{
    if (s < t)
        throw std::invalid_argument("gamma_star_lower: s >= t required");
    size_t it = orbit.index_of(t);
    size_t is = orbit.index_of(s);
    double lmin = kInf;
    for (size_t j = it; j < orbit.size(); ++j)
        lmin = std::min(lmin, orbit.points[j].log_rho);
    return omega_theta_log(orbit.points[is].log_rho - lmin, orbit.points[is].theta);
}

double c_theta(double theta)
{
    if (!(theta > 0.0 && theta < 0.5 * kPi))
        throw std::invalid_argument("c_theta: theta in (0, pi/2) required");
    double c = std::cos(theta);
    auto f = [c](double y) { return omega_theta_exact(Complex{c, y}, 1.0); };
    double span = 4.0;
    for (;;) {
        auto [ym, fm] = golden_section_min(f, 0.0, span, 1e-12);
        // accept once the profile demonstrably turns upward inside the window
        if (f(span) > fm && ym < 0.9 * span)
            return fm;
        span *= 2.0;
        if (span > 1e12)
            return fm;
    }
}

SlitPolyline build_slit(const Orbit& orbit, double t, double s_max, int refinement)
{
    if (refinement < 16)
        throw std::invalid_argument("build_slit: refinement >= 16 required");
    if (!(t < s_max))
        throw std::invalid_argument("build_slit: t < s_max required");
    double lo = orbit.times.front(), hi = orbit.times.back();
    double tol = 1e-9 * std::max(1.0, std::abs(hi));
    if (t < lo - tol || s_max > hi + tol)
        throw std::invalid_argument("build_slit: orbit does not cover [t, s_max]");

    const bool exact = orbit.model.has_value() && orbit.model->closed_form();
    auto sample_at = [&](double s) -> LogPolarPoint {
        if (exact)
            return orbit_point(*orbit.model, s);
        // piecewise linear in (log_rho, theta) between bracketing samples
        auto ub = std::upper_bound(orbit.times.begin(), orbit.times.end(), s);
        size_t j = std::min(size_t(ub - orbit.times.begin()), orbit.size() - 1);
        if (j == 0)
            return orbit.points.front();
        size_t i = j - 1;
        double w = (s - orbit.times[i]) / (orbit.times[j] - orbit.times[i]);
        w = std::min(std::max(w, 0.0), 1.0);
        return LogPolarPoint{
            orbit.points[i].log_rho + w * (orbit.points[j].log_rho - orbit.points[i].log_rho),
            orbit.points[i].theta + w * (orbit.points[j].theta - orbit.points[i].theta)};
    };

    // parameter seeds: the endpoints plus every orbit sample strictly inside
    std::vector<double> params{t};
    for (double s : orbit.times)
        if (s > t && s < s_max)
            params.push_back(s);
    params.push_back(s_max);

    double max_gap = 1.0 / double(refinement);
    std::vector<LogPolarPoint> out_pts;
    out_pts.push_back(sample_at(params[0]));
    for (size_t i = 1; i < params.size(); ++i) {
        // refine each parameter interval by bisection until hyperbolically short
        struct Seg { double s0, s1; LogPolarPoint p0, p1; };
        std::vector<Seg> stack{{params[i - 1], params[i], out_pts.back(), sample_at(params[i])}};
        while (!stack.empty()) {
            Seg sg = stack.back();
            stack.pop_back();
            if (dist_halfplane(sg.p0, sg.p1) <= max_gap ||
                sg.s1 - sg.s0 < 1e-12 * std::max(1.0, sg.s1)) {
                out_pts.push_back(sg.p1);
                continue;
            }
            double sm = 0.5 * (sg.s0 + sg.s1);
            LogPolarPoint pm = sample_at(sm);
            // push right first so the left half is emitted first
            stack.push_back({sm, sg.s1, pm, sg.p1});
            stack.push_back({sg.s0, sm, sg.p0, pm});
        }
    }

    SlitPolyline slit;
    slit.t_start = t;
    slit.s_max = s_max;
    slit.refinement = refinement;
    slit.vertices.reserve(out_pts.size());
    for (const auto& p : out_pts) {
        Complex z = p.to_complex();
        if (!slit.vertices.empty() && z == slit.vertices.back())
            continue;
        slit.vertices.push_back(z);
    }
    if (slit.vertices.size() < 2)
        throw std::runtime_error("build_slit: degenerate polyline");
    return slit;
}

namespace {

struct SegmentSet {
    std::vector<Complex> p;    // segment starts
    std::vector<Complex> d;    // segment vectors
    std::vector<double> len2;  // |d|^2

    explicit SegmentSet(const SlitPolyline& slit)
    {
        size_t m = slit.vertices.size() - 1;
        p.reserve(m);
        d.reserve(m);
        len2.reserve(m);
        for (size_t i = 0; i < m; ++i) {
            Complex a = slit.vertices[i], b = slit.vertices[i + 1];
            p.push_back(a);
            d.push_back(b - a);
            len2.push_back(std::norm(b - a));
        }
    }

    // distance from w to the polyline; *nearest gets the closest point
    double distance(Complex w, Complex* nearest = nullptr) const
    {
        double best = kInf;
        Complex bq;
        for (size_t i = 0; i < p.size(); ++i) {
            Complex r = w - p[i];
            double tproj = (r.real() * d[i].real() + r.imag() * d[i].imag()) / len2[i];
            tproj = std::min(std::max(tproj, 0.0), 1.0);
            Complex q = p[i] + tproj * d[i];
            double dd = std::norm(w - q);
            if (dd < best) {
                best = dd;
                bq = q;
            }
        }
        if (nearest)
            *nearest = bq;
        return std::sqrt(best);
    }
};

enum : unsigned char { kEndAxis = 0, kEndSlit = 1, kEndLost = 2 };

struct WalkEnd {
    unsigned char kind;
    Complex w; // termination position
};

WalkEnd run_walk(WalkRng& rng, Complex start, const SegmentSet* slit, double eps,
                 long max_steps)
{
    Complex w = start;
    for (long step = 0; step < max_steps; ++step) {
        double d_axis = w.real();
        double d_slit = slit ? slit->distance(w) : kInf;
        double d = std::min(d_axis, d_slit);
        if (d < eps)
            return WalkEnd{d_axis < d_slit ? kEndAxis : kEndSlit, w};
        double u = kTwoPi * rng.uniform();
        w += Complex{d * std::cos(u), d * std::sin(u)};
        if (w.real() < 0.0)
            w = Complex{0.0, w.imag()};
    }
    return WalkEnd{kEndLost, w};
}

// Scores every walk into a preallocated slot; the reduction order is fixed by
// walk index, so results do not depend on the worker partition.
template <typename ScoreFn>
void run_walk_block(const ScoreFn& score, Complex start, const SegmentSet* slit,
                    double eps, long max_steps, uint64_t seed, long i0, long i1,
                    double* out, unsigned char* kinds)
{
    for (long i = i0; i < i1; ++i) {
        WalkRng rng(seed, uint64_t(i));
        WalkEnd end = run_walk(rng, start, slit, eps, max_steps);
        kinds[i] = end.kind;
        out[i] = end.kind == kEndLost ? 0.0 : score(end);
    }
}

template <typename ScoreFn>
void run_walks(const ScoreFn& score, Complex start, const SegmentSet* slit, double eps,
               long max_steps, uint64_t seed, long n, int workers,
               std::vector<double>& scores, std::vector<unsigned char>& kinds)
{
    scores.assign(n, 0.0);
    kinds.assign(n, kEndLost);
    if (workers <= 1) {
        run_walk_block(score, start, slit, eps, max_steps, seed, 0, n,
                       scores.data(), kinds.data());
        return;
    }
    std::vector<std::thread> pool;
    long chunk = (n + workers - 1) / workers;
    for (int k = 0; k < workers; ++k) {
        long i0 = k * chunk;
        long i1 = std::min(n, i0 + chunk);
        if (i0 >= i1)
            break;
        pool.emplace_back([&, i0, i1] {
            run_walk_block(score, start, slit, eps, max_steps, seed, i0, i1,
                           scores.data(), kinds.data());
        });
    }
    for (auto& th : pool)
        th.join();
}

void check_wos_preconditions(const SlitPolyline* slit, const SegmentSet* segs,
                             Complex start, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("wos: eps > 0 required");
    if (!(start.real() > eps))
        throw std::invalid_argument("wos: start must lie in the domain, away from the axis");
    if (slit) {
        for (Complex v : slit->vertices)
            if (!(v.real() > 0.0))
                throw std::invalid_argument("wos: slit vertices must have Re > 0");
        if (segs->distance(start) <= eps)
            throw std::invalid_argument("wos: start must be farther than eps from the slit");
    }
}

} // namespace

HMEstimate wos_measure(const SlitPolyline* slit, Complex start, WosTarget target,
                       long n, double eps, uint64_t seed, long max_steps, int workers)
{
    if (n <= 0)
        throw std::invalid_argument("wos: n > 0 required");
    if (target.kind == WosTarget::Theta && !(target.a > 0.0))
        throw std::invalid_argument("wos: Theta target needs a > 0");
    if (target.kind == WosTarget::Slit && !slit)
        throw std::invalid_argument("wos: Slit target needs a slit domain");

    std::optional<SegmentSet> segs_storage;
    if (slit)
        segs_storage.emplace(*slit);
    const SegmentSet* segs = slit ? &*segs_storage : nullptr;
    check_wos_preconditions(slit, segs, start, eps);

    auto score = [&](const WalkEnd& end) -> double {
        if (target.kind == WosTarget::Slit)
            return end.kind == kEndSlit ? 1.0 : 0.0;
        return (end.kind == kEndAxis && std::abs(end.w.imag()) >= target.a) ? 1.0 : 0.0;
    };

    std::vector<double> scores;
    std::vector<unsigned char> kinds;
    run_walks(score, start, segs, eps, max_steps, seed, n, workers, scores, kinds);

    long discarded = 0;
    double hits = 0.0;
    for (long i = 0; i < n; ++i) {
        discarded += kinds[i] == kEndLost;
        hits += scores[i];
    }
    long n_eff = n - discarded;

    HMEstimate est;
    est.n = n_eff;
    est.discarded = discarded;
    est.eps_shell = eps;
    est.max_steps = max_steps;
    est.seed = seed;
    est.s_max = slit ? slit->s_max : 0.0;
    est.valid = discarded * 1000 <= n; // at most 0.1% lost
    est.mean = n_eff > 0 ? hits / double(n_eff) : 0.0;
    est.std_err = n_eff > 0 ? std::sqrt(est.mean * (1.0 - est.mean) / double(n_eff)) : 0.0;
    return est;
}

double default_slit_truncation(const Orbit& orbit, double t)
{
    size_t it = orbit.index_of(t);
    double target = orbit.points[it].log_rho + std::log(1000.0);
    if (orbit.model.has_value() && orbit.model->closed_form()) {
        double s = time_for_log_modulus(*orbit.model, target);
        return std::min(s, orbit.times.back());
    }
    for (size_t j = it; j < orbit.size(); ++j)
        if (orbit.points[j].log_rho >= target)
            return orbit.times[j];
    return orbit.times.back();
}

StrongMarkovReport strong_markov_check(const Orbit& orbit, double t, long n,
                                       double eps, uint64_t seed, double s_max,
                                       int refinement, long max_steps, int workers)
{
    size_t it = orbit.index_of(t);
    double a = std::exp(orbit.points[it].log_rho); // rho_t
    if (!std::isfinite(a))
        throw std::invalid_argument("strong_markov_check: rho_t overflows double");
    if (s_max <= 0.0)
        s_max = default_slit_truncation(orbit, t);

    StrongMarkovReport rep;
    rep.seed = seed;
    rep.eps = eps;
    rep.lhs = omega_theta_exact(Complex{1.0, 0.0}, a);

    const bool have_slit = s_max > t;
    SlitPolyline slit;
    std::optional<SegmentSet> segs_storage;
    const SlitPolyline* slit_ptr = nullptr;
    const SegmentSet* segs = nullptr;
    if (have_slit) {
        slit = build_slit(orbit, t, s_max, refinement);
        slit_ptr = &slit;
        segs_storage.emplace(slit);
        segs = &*segs_storage;
    }
    rep.s_max = have_slit ? s_max : 0.0;
    check_wos_preconditions(slit_ptr, segs, Complex{1.0, 0.0}, eps);

    // a walk stopped on the slit restarts analytically from its hitting point
    auto score = [&](const WalkEnd& end) -> double {
        if (end.kind == kEndSlit) {
            Complex alpha;
            segs->distance(end.w, &alpha);
            return omega_theta_exact(alpha, a);
        }
        return std::abs(end.w.imag()) >= a ? 1.0 : 0.0;
    };

    std::vector<double> scores;
    std::vector<unsigned char> kinds;
    run_walks(score, Complex{1.0, 0.0}, segs, eps, max_steps, seed, n, workers,
              scores, kinds);

    long discarded = 0, slit_hits = 0;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        discarded += kinds[i] == kEndLost;
        slit_hits += kinds[i] == kEndSlit;
        sum += scores[i];
    }
    long n_eff = n - discarded;
    double mean = n_eff > 0 ? sum / double(n_eff) : 0.0;
    double ss = 0.0;
    for (long i = 0; i < n; ++i) {
        if (kinds[i] == kEndLost)
            continue;
        double dv = scores[i] - mean;
        ss += dv * dv;
    }
    double var = n_eff > 1 ? ss / double(n_eff - 1) : 0.0;

    rep.n = n_eff;
    rep.discarded = discarded;
    rep.slit_hits = slit_hits;
    rep.rhs = mean;
    rep.std_err = n_eff > 0 ? std::sqrt(var / double(n_eff)) : 0.0;
    rep.diff = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.diff <= 3.0 * rep.std_err;
    return rep;
}

} // namespace orbspeed
