#include "orbspeed/models.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace orbspeed {

namespace {
constexpr double kPi = 3.14159265358979323846;

// log(rho cos theta) along the sample; the quantity that must not decrease.
double log_julia(const LogPolarPoint& p)
{
    return p.log_rho + std::log(std::cos(p.theta));
}
} // namespace

size_t Orbit::index_of(double t) const
{
    for (size_t i = 0; i < times.size(); ++i) {
        double tol = 1e-9 * std::max(1.0, std::abs(times[i]));
        if (std::abs(times[i] - t) <= tol)
            return i;
    }
    throw std::out_of_range("orbit: time " + std::to_string(t) + " is not a sample");
}

void Orbit::validate() const
{
    if (times.empty() || times.size() != points.size())
        throw std::runtime_error("orbit: empty or mismatched time/point arrays");
    for (size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw std::runtime_error("orbit: times not strictly increasing at rows " +
                                     std::to_string(i - 1) + "," + std::to_string(i));
        double a = log_julia(points[i - 1]);
        double b = log_julia(points[i]);
        if (b < a - 1e-9)
            throw std::runtime_error(
                "orbit: rho*cos(theta) decreases between rows " + std::to_string(i - 1) +
                " and " + std::to_string(i) + " (Denjoy-Wolff monotonicity violated)");
    }
}

LogPolarPoint orbit_point(const ModelSpec& model, double t)
{
    model.validate();
    if (!(t >= 0.0))
        throw std::invalid_argument("orbit_point: t >= 0 required");
    switch (model.kind) {
    case ModelKind::Sector: {
        // g(u) = e^{i psi0} u^{beta/pi} maps H onto W(theta,eta), g(1) = base;
        // solving g(u_t) = g(1) + it gives u_t = (1 + t e^{-i(eta-theta)/2})^{pi/beta}.
        double beta = model.theta + model.eta;
        double d2 = 0.5 * (model.eta - model.theta);
        double re = 1.0 + t * std::cos(d2);
        double im = -t * std::sin(d2);
        double p = kPi / beta;
        double log_rho = p * 0.5 * std::log(re * re + im * im);
        double theta = p * std::atan2(im, re);
        return LogPolarPoint{log_rho, theta};
    }
    case ModelKind::Strip:
        return LogPolarPoint{kPi * t / model.width, 0.0};
    case ModelKind::HalfPlane:
        return LogPolarPoint{0.5 * std::log1p(t * t), std::atan(t)};
    case ModelKind::Parabola:
    case ModelKind::Xi:
        throw bound_only_error("bound-only model; use `bounds`");
    }
    throw std::logic_error("orbit_point: unreachable");
}

std::vector<double> make_grid(double t_min, double t_max, size_t n, GridSpacing spacing)
{
    if (!(t_min < t_max))
        throw std::invalid_argument("t_min < t_max required");
    if (n < 2)
        throw std::invalid_argument("grid needs n >= 2");
    std::vector<double> out(n);
    if (spacing == GridSpacing::Log) {
        if (!(t_min > 0.0))
            throw std::invalid_argument("log spacing requires t_min > 0");
        double lo = std::log(t_min), hi = std::log(t_max);
        for (size_t i = 0; i < n; ++i)
            out[i] = std::exp(lo + (hi - lo) * double(i) / double(n - 1));
    } else {
        for (size_t i = 0; i < n; ++i)
            out[i] = t_min + (t_max - t_min) * double(i) / double(n - 1);
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

Orbit orbit_grid(const ModelSpec& model, double t_min, double t_max, size_t n,
                 GridSpacing spacing)
{
    if (!(t_min >= 0.0))
        throw std::invalid_argument("orbit_grid: t_min >= 0 required");
    Orbit orbit;
    orbit.model = model;
    orbit.source = OrbitSource::Computed;
    orbit.times = make_grid(t_min, t_max, n, spacing);
    orbit.points.reserve(n);
    for (double t : orbit.times)
        orbit.points.push_back(orbit_point(model, t));
    orbit.validate();
    return orbit;
}

Orbit orbit_at_times(const ModelSpec& model, const std::vector<double>& times)
{
    if (times.empty())
        throw std::invalid_argument("orbit_at_times: empty time list");
    if (!(times.front() >= 0.0))
        throw std::invalid_argument("orbit_at_times: times >= 0 required");
    Orbit orbit;
    orbit.model = model;
    orbit.source = OrbitSource::Computed;
    orbit.times = times;
    orbit.points.reserve(times.size());
    for (double t : times)
        orbit.points.push_back(orbit_point(model, t));
    orbit.validate();
    return orbit;
}

Orbit ingest_orbit(const std::vector<OrbitRow>& rows)
{
    if (rows.empty())
        throw std::runtime_error("ingest_orbit: no rows");
    Orbit orbit;
    orbit.source = OrbitSource::Ingested;
    orbit.times.reserve(rows.size());
    orbit.points.reserve(rows.size());
    for (const auto& r : rows) {
        orbit.times.push_back(r.t);
        orbit.points.push_back(LogPolarPoint::make(r.log_rho, r.theta));
    }
    orbit.validate();
    return orbit;
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit)
{
    os << "t,log_rho,theta\n";
    char buf[128];
    for (size_t i = 0; i < orbit.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", orbit.times[i],
                      orbit.points[i].log_rho, orbit.points[i].theta);
        os << buf;
    }
}

Orbit read_orbit_csv(std::istream& is)
{
    std::string line;
    size_t lineno = 0;
    if (!std::getline(is, line))
        throw std::runtime_error("orbit csv: empty input");
    ++lineno;
    // tolerate trailing CR from foreign line endings
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "t,log_rho,theta")
        throw std::runtime_error("orbit csv: line 1: expected header 't,log_rho,theta'");

    std::vector<OrbitRow> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ss, tok, ','))
            toks.push_back(tok);
        if (toks.size() != 3)
            throw std::runtime_error("orbit csv: line " + std::to_string(lineno) +
                                     ": expected 3 comma-separated values");
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            size_t pos = 0;
            try {
                vals[k] = std::stod(toks[k], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != toks[k].size())
                throw std::runtime_error("orbit csv: line " + std::to_string(lineno) +
                                         ": bad number '" + toks[k] + "'");
        }
        rows.push_back(OrbitRow{vals[0], vals[1], vals[2]});
    }
    return ingest_orbit(rows);
}

double time_for_log_modulus(const ModelSpec& model, double target)
{
    if (!model.closed_form())
        throw std::invalid_argument("time_for_log_modulus: closed-form model required");
    if (orbit_point(model, 0.0).log_rho >= target)
        return 0.0;
    double hi = 1.0;
    while (orbit_point(model, hi).log_rho < target) {
        hi *= 2.0;
        if (hi > 1e300)
            throw std::runtime_error("time_for_log_modulus: target not reached");
    }
    double lo = 0.5 * hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (orbit_point(model, mid).log_rho >= target)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-12 * hi)
            break;
    }
    return hi;
}

} // namespace orbspeed
