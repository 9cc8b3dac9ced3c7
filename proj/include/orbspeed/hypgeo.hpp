// Hyperbolic geometry of the unit disc and the right half-plane.
//
// Metric normalization used throughout: k_H(1, rho) = (1/2) log rho on the
// half-plane H = {Re w > 0}, equivalently k_D(0, r) = (1/2) log((1+r)/(1-r))
// on the disc.  Half-plane points are kept in log-polar form
// w = exp(log_rho) * exp(i theta) so that moduli like exp(pi * 1e6) never
// need to be materialized.

#pragma once

#include <complex>
#include <stdexcept>

namespace orbspeed {

using Complex = std::complex<double>;

// Point of the open unit disc.
struct DiscPoint {
    Complex z;

    static DiscPoint make(Complex z);
};

// Point of the right half-plane, w = exp(log_rho + i*theta), |theta| < pi/2.
struct LogPolarPoint {
    double log_rho = 0.0;
    double theta = 0.0;

    static LogPolarPoint make(double log_rho, double theta);
    static LogPolarPoint from_complex(Complex w);

    double rho() const { return std::exp(log_rho); }
    // Materializes the point; throws if exp(log_rho) would overflow.
    Complex to_complex() const;
};

// Arc of the unit circle, stored by endpoints and by normalized angular
// length |arc| / (2 pi).
struct BoundaryArc {
    Complex endpoint_a;
    Complex endpoint_b;
    double normalized_length = 0.0;
};

// Cayley map C(z) = (1+z)/(1-z), disc -> right half-plane, C(0)=1, C(1)=inf.
Complex cayley(DiscPoint p);
DiscPoint inv_cayley(Complex w);

// Hyperbolic distance between half-plane points (log-polar, overflow safe).
double dist_halfplane(LogPolarPoint a, LogPolarPoint b);

// Hyperbolic distance between disc points.
double dist_disc(DiscPoint a, DiscPoint b);

// Metric projection onto the geodesic (0, +inf) of the half-plane: the
// nearest-point projection of rho*e^{i theta} is rho (same modulus).
LogPolarPoint project_to_ray(LogPolarPoint p);

// Distance from rho*e^{i theta} to its projection rho; depends only on
// theta: (1/2) arccosh(1/cos theta).
double tangential_offset(double theta);

// Boundary arc A_t of the disc that the Cayley map sends to
// {iy : |y| >= rho}, rho = exp(log_rho).  Requires log_rho >= 0.
BoundaryArc arc_At(double log_rho);

// log(1 + x) variant of arccosh: arccosh(1 + d) for d >= 0, accurate for
// small d where arccosh itself cancels.
double acosh1p(double d);

} // namespace orbspeed
