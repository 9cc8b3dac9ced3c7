// Closed-form orbits u_t = C(phi_t(0)) in log-polar half-plane coordinates,
// plus ingestion of synthetic orbits from (t, log_rho, theta) rows.

#pragma once

#include "orbspeed/domains.hpp"
#include "orbspeed/hypgeo.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orbspeed {

// Raised when an orbit is requested from a model that only supports bounds.
struct bound_only_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class OrbitSource { Computed, Ingested };

struct Orbit {
    std::optional<ModelSpec> model; // empty for synthetic data
    OrbitSource source = OrbitSource::Computed;
    std::vector<double> times;
    std::vector<LogPolarPoint> points;

    size_t size() const { return times.size(); }
    // Index of the sample at time t (within a small relative tolerance).
    size_t index_of(double t) const;
    // Checks times strictly increasing and rho_s cos(theta_s) nondecreasing
    // (1e-9 relative slack); throws naming the first offending rows.
    void validate() const;
};

LogPolarPoint orbit_point(const ModelSpec& model, double t);

enum class GridSpacing { Log, Linear };

std::vector<double> make_grid(double t_min, double t_max, size_t n, GridSpacing spacing);

Orbit orbit_grid(const ModelSpec& model, double t_min, double t_max, size_t n,
                 GridSpacing spacing = GridSpacing::Log);

// Orbit sampled at an explicit, strictly increasing list of times.
Orbit orbit_at_times(const ModelSpec& model, const std::vector<double>& times);

struct OrbitRow {
    double t;
    double log_rho;
    double theta;
};

Orbit ingest_orbit(const std::vector<OrbitRow>& rows);

// CSV, header `t,log_rho,theta`, 17 significant digits (bit-exact round trip).
void write_orbit_csv(std::ostream& os, const Orbit& orbit);
Orbit read_orbit_csv(std::istream& is);

// Smallest t with log rho_t >= target on a closed-form model (the orbit
// modulus is nondecreasing for all of them); used for slit truncation.
double time_for_log_modulus(const ModelSpec& model, double target);

} // namespace orbspeed
