#include "orbspeed/speeds.hpp"
#include "orbspeed/numerics.hpp"

#include <cmath>

namespace orbspeed {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

// Decomposition log|u + 1| = m + a, log|u - 1| = m + b with m = max(L, 0),
// so that the O(1) parts a, b stay exact when L is huge.
struct EuclidParts {
    double m;
    double a;
    double b;
};

EuclidParts euclid_parts(LogPolarPoint u)
{
    double L = u.log_rho;
    double c = std::cos(u.theta);
    EuclidParts p;
    p.m = std::max(L, 0.0);
    double e = std::exp(-std::abs(L)); // min(rho, 1/rho)
    p.a = 0.5 * std::log1p(e * (2.0 * c + e));
    if (std::abs(L) > 50.0) {
        p.b = 0.5 * std::log1p(e * (e - 2.0 * c));
    } else {
        // |u-1|^2 = (rho-1)^2 + 4 rho sin^2(theta/2), cancellation-free near u = 1
        double em = std::expm1(L);
        double s = std::sin(0.5 * u.theta);
        p.b = 0.5 * std::log(em * em + 4.0 * std::exp(L) * s * s) - p.m;
    }
    return p;
}

// v - v_o without forming the two large halves.
double total_speed_residual(LogPolarPoint u)
{
    if (u.log_rho > 300.0)
        return 0.5 * std::log(1.0 / std::cos(u.theta));
    return dist_halfplane(LogPolarPoint{0.0, 0.0}, u) - std::max(u.log_rho, 0.0) * 0.5;
}

} // namespace

SpeedTriple speed_triple(LogPolarPoint u, double t)
{
    SpeedTriple s;
    s.t = t;
    s.v = dist_halfplane(LogPolarPoint{0.0, 0.0}, u);
    s.v_o = std::max(0.0, 0.5 * u.log_rho);
    s.v_T = tangential_offset(u.theta);
    return s;
}

EuclidRates euclid_rates(LogPolarPoint u)
{
    EuclidParts p = euclid_parts(u);
    double L = u.log_rho;
    double c = std::cos(u.theta);
    EuclidRates r;
    r.log_dist_to_tau = kLog2 - p.m - p.a;
    // 1 - |phi| = 4 rho cos(theta) / (|u+1| (|u+1| + |u-1|))
    r.log_one_minus_mod = std::log(4.0 * c) + (L - 2.0 * p.m) - 2.0 * p.a
                        - std::log1p(std::exp(p.b - p.a));
    return r;
}

BracketSlack pythagoras_slack(LogPolarPoint u)
{
    double vres = total_speed_residual(u);
    double vT = tangential_offset(u.theta);
    // v = v_o + vres exactly, so the bracket reduces to an O(1) comparison.
    return BracketSlack{vres - vT + 0.5 * kLog2, vT - vres};
}

double tangent_cap_slack(LogPolarPoint u)
{
    double v_o = std::max(0.0, 0.5 * u.log_rho);
    return v_o + 4.0 * kLog2 - tangential_offset(u.theta);
}

EuclidSlack euclid_rate_slack(LogPolarPoint u)
{
    EuclidParts p = euclid_parts(u);
    double L = u.log_rho;
    double c = std::cos(u.theta);
    double lse = std::log1p(std::exp(p.b - p.a)); // log(|u+1|+|u-1|) - log|u+1|
    double vres = total_speed_residual(u);
    double vT = tangential_offset(u.theta);

    // E_total = v + (1/2) log(1-|phi|) with v = m/2 + vres; the m/2 halves
    // cancel symbolically, leaving an O(1) expression (L - m is exactly 0
    // for points with rho >= 1).
    double e_tot = vres + 0.5 * (std::log(4.0 * c) + (L - p.m) - 2.0 * p.a - lse);
    double e_ort = 0.5 * (kLog2 - p.a);
    double e_tan = vT - 0.5 * (kLog2 - std::log(4.0 * c) + (p.m - L) + p.a + lse);

    EuclidSlack s;
    s.total = 0.5 * kLog2 - std::abs(e_tot);
    s.orthogonal = 0.5 * kLog2 - std::abs(e_ort);
    s.tangential = 1.5 * kLog2 - std::abs(e_tan);
    return s;
}

SpeedBound speed_bounds_quadrature(const ModelSpec& model, double t)
{
    model.validate();
    if (!(t >= 1.0))
        throw std::invalid_argument("speed_bounds_quadrature: t >= 1 required");
    if (model.kind == ModelKind::Strip || model.kind == ModelKind::HalfPlane)
        throw std::invalid_argument("speed_bounds_quadrature: Parabola, Xi or Sector input");

    SpeedBound b;
    b.t = t;
    auto integrand = [&](double s) { return 1.0 / boundary_gap(model, s); };
    b.upper = adaptive_simpson(integrand, 0.0, t, 1e-8);
    if (model.convex()) {
        b.lower = 0.5 * b.upper;
        b.method = "convex-quadrature";
    } else {
        b.lower = 0.25 * std::log1p(t / boundary_gap(model, 0.0));
        b.method = "simply-connected";
    }
    return b;
}

AsymptoteFit fit_asymptote(const std::vector<double>& t,
                           const std::vector<double>& value,
                           FitShape shape, double gamma)
{
    if (t.size() != value.size() || t.size() < 8)
        throw std::invalid_argument("fit_asymptote: need >= 8 samples");
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || (i > 0 && !(t[i] > t[i - 1])))
            throw std::invalid_argument("fit_asymptote: t must be positive increasing");
    }
    if (!(t.back() / t.front() >= 1e3))
        throw std::invalid_argument("fit_asymptote: need >= 3 decades of t span");

    AsymptoteFit fit;
    fit.shape = shape;
    fit.gamma = (shape == FitShape::Power) ? gamma : 0.0;
    // upper half of the window in log t
    double split = std::sqrt(t.front() * t.back());
    std::vector<double> bx, by;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < split)
            continue;
        double basis = (shape == FitShape::LogT) ? std::log(t[i]) : std::pow(t[i], gamma);
        bx.push_back(basis);
        by.push_back(value[i]);
    }
    fit.window_lo = split;
    fit.window_hi = t.back();
    fit.coefficient = fit_scale(bx, by);
    fit.residual_max = 0.0;
    for (size_t i = 0; i < bx.size(); ++i)
        fit.residual_max = std::max(fit.residual_max,
                                    std::abs(by[i] / bx[i] - fit.coefficient));
    return fit;
}

} // namespace orbspeed
