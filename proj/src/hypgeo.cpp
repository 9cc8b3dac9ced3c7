#include "orbspeed/hypgeo.hpp"

#include <cmath>

namespace orbspeed {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
} // namespace

DiscPoint DiscPoint::make(Complex z)
{
    if (!finite(z) || std::abs(z) >= 1.0)
        throw std::invalid_argument("DiscPoint: |z| < 1 required");
    return DiscPoint{z};
}

LogPolarPoint LogPolarPoint::make(double log_rho, double theta)
{
    if (!std::isfinite(log_rho) || !std::isfinite(theta) || std::abs(theta) >= kHalfPi)
        throw std::invalid_argument("LogPolarPoint: finite log_rho and |theta| < pi/2 required");
    return LogPolarPoint{log_rho, theta};
}

LogPolarPoint LogPolarPoint::from_complex(Complex w)
{
    if (!finite(w) || w.real() <= 0.0)
        throw std::invalid_argument("LogPolarPoint: Re w > 0 required");
    return LogPolarPoint{std::log(std::abs(w)), std::arg(w)};
}

Complex LogPolarPoint::to_complex() const
{
    if (log_rho > 700.0)
        throw std::domain_error("LogPolarPoint: modulus overflows double");
    double r = std::exp(log_rho);
    return {r * std::cos(theta), r * std::sin(theta)};
}

Complex cayley(DiscPoint p)
{
    return (1.0 + p.z) / (1.0 - p.z);
}

DiscPoint inv_cayley(Complex w)
{
    if (!finite(w) || w.real() <= 0.0)
        throw std::invalid_argument("inv_cayley: Re w > 0 required");
    return DiscPoint{(w - 1.0) / (w + 1.0)};
}

double acosh1p(double d)
{
    // arccosh(1 + d) = log(1 + d + sqrt(d (d + 2)))
    return std::log1p(d + std::sqrt(d * (d + 2.0)));
}

double dist_halfplane(LogPolarPoint a, LogPolarPoint b)
{
    // cosh(2k) = 1 + |w1 - w2|^2 / (2 Re w1 Re w2); in log-polar coordinates
    //   |w1 - w2|^2 / (2 rho1 rho2) = cosh(dL) - cos(dtheta)
    // so d = (cosh dL - cos dtheta) / (cos t1 cos t2) - ... reduced to
    // 2 (sinh^2(dL/2) + sin^2(dtheta/2)) / (cos t1 cos t2), cancellation-free.
    double dl = a.log_rho - b.log_rho;
    double dt = a.theta - b.theta;
    double cc = std::cos(a.theta) * std::cos(b.theta);
    if (std::abs(dl) > 300.0) {
        // sinh^2(dL/2) dominates; k = |dL|/2 + (1/2) log(1/cc) up to e^{-|dL|}
        return 0.5 * std::abs(dl) + 0.5 * std::log(1.0 / cc);
    }
    double sh = std::sinh(0.5 * dl);
    double sn = std::sin(0.5 * dt);
    double d = 2.0 * (sh * sh + sn * sn) / cc;
    return 0.5 * acosh1p(d);
}

double dist_disc(DiscPoint a, DiscPoint b)
{
    double p = std::abs(a.z - b.z) / std::abs(1.0 - std::conj(a.z) * b.z);
    return std::atanh(p);
}

LogPolarPoint project_to_ray(LogPolarPoint p)
{
    return LogPolarPoint{p.log_rho, 0.0};
}

double tangential_offset(double theta)
{
    if (!std::isfinite(theta) || std::abs(theta) >= kHalfPi)
        throw std::invalid_argument("tangential_offset: |theta| < pi/2 required");
    double s = std::sin(0.5 * theta);
    // 1/cos(theta) - 1 = 2 sin^2(theta/2) / cos(theta)
    return 0.5 * acosh1p(2.0 * s * s / std::cos(theta));
}

BoundaryArc arc_At(double log_rho)
{
    if (!std::isfinite(log_rho) || log_rho < 0.0)
        throw std::invalid_argument("arc_At: log_rho >= 0 required");
    // Endpoints C^{-1}(+-i rho) = ((rho^2-1) +- 2 i rho) / (rho^2+1); in
    // terms of e = 1/rho <= 1 this is ((1-e^2) +- 2 i e) / (1+e^2).
    double e = std::exp(-log_rho);
    double den = 1.0 + e * e;
    double re = (1.0 - e * e) / den;
    double im = 2.0 * e / den;
    // Arc from angle -psi0 to +psi0 through 1, psi0 = atan2(2e, 1-e^2);
    // normalized length = 2 psi0 / (2 pi).
    double psi0 = std::atan2(2.0 * e, (1.0 - e) * (1.0 + e));
    return BoundaryArc{{re, -im}, {re, im}, psi0 / kPi};
}

} // namespace orbspeed
