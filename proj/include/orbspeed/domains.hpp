// Koenigs-image model domains: sectors W(theta,eta), strips, the vertical
// half-plane, parabola-type regions P_alpha = {Im z > |Re z|^alpha}, and the
// mixed region Xi(alpha,theta) = (-H~ cap P_alpha) cup W(theta).
//
// All domains live in coordinates where the orbit moves straight up:
// z(t) = z0 + it with z0 the model's base point.  base_shift translates the
// whole domain and only matters for inclusion tests.

#pragma once

#include "orbspeed/hypgeo.hpp"

#include <string>
#include <vector>

namespace orbspeed {

enum class ModelKind { Sector, Strip, HalfPlane, Parabola, Xi };

struct ModelSpec {
    ModelKind kind = ModelKind::HalfPlane;
    double theta = 0.0; // Sector: right half-opening; Xi: sector part
    double eta = 0.0;   // Sector: left half-opening
    double width = 0.0; // Strip
    double alpha = 0.0; // Parabola, Xi
    Complex base_shift{0.0, 0.0};

    static ModelSpec sector(double theta, double eta, Complex shift = {});
    static ModelSpec strip(double width, Complex shift = {});
    static ModelSpec half_plane(Complex shift = {});
    static ModelSpec parabola(double alpha, Complex shift = {});
    static ModelSpec xi(double alpha, double theta, Complex shift = {});

    void validate() const;
    // Closed-form orbit available (Sector/Strip/HalfPlane)?
    bool closed_form() const;
    bool convex() const;
    // Base point z0 of the orbit ray z0 + it (without base_shift).
    Complex base_point() const;
    std::string describe() const;
};

// Text form used by the CLI: sector:T,E  strip:W  halfplane  parabola:A
// xi:A,T  (angles in radians).
ModelSpec parse_model_spec(const std::string& text);

struct QuasiSymmetryReport {
    std::vector<double> t_grid;
    std::vector<double> ratio; // delta^+ / delta^-
    bool quasi_symmetric = false;
    double K_estimate = 1.0;
    double fitted_exponent = 0.0; // log-log slope of max(ratio, 1/ratio)
};

struct Inclusion {
    bool included = false;
    bool exact = false; // analytic predicate; false means sampled evidence
};

// Euclidean distance from i*s to the boundary of P_alpha, computed from the
// largest positive root of x^alpha + (1/alpha) x^(2-alpha) - s = 0.
double delta_parabola(double s, double alpha);

// One-sided boundary gaps of Xi(alpha,theta) at i*t:
// delta_plus toward the sector side, delta_minus toward the parabola side.
struct XiGaps {
    double delta_plus;
    double delta_minus;
};
XiGaps delta_xi(double t, double alpha, double theta);

// Euclidean distance from base_point + i*s to the domain boundary (shift
// ignored; used by the quadrature bounds along the orbit ray).
double boundary_gap(const ModelSpec& model, double s);

QuasiSymmetryReport quasi_symmetry_scan(const ModelSpec& model,
                                        const std::vector<double>& t_grid);

Inclusion inclusion_probe(const ModelSpec& inner, const ModelSpec& outer);
bool inclusion_check(const ModelSpec& inner, const ModelSpec& outer);

} // namespace orbspeed
