#include "orbspeed/domains.hpp"
#include "orbspeed/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace orbspeed {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from p to the ray {r e^{i psi} : r >= 0}.
double dist_to_ray(Complex p, double psi)
{
    Complex dir{std::cos(psi), std::sin(psi)};
    double r = std::max(0.0, p.real() * dir.real() + p.imag() * dir.imag());
    return std::abs(p - r * dir);
}

// Same, with the ray restricted to the half-plane side * (Re q - c) >= 0.
double dist_to_ray_sided(Complex p, double psi, double c, int side)
{
    Complex dir{std::cos(psi), std::sin(psi)};
    double r_lo = 0.0, r_hi = kInf;
    double sc = side * dir.real(); // sign of d(side*Re)/dr along the ray
    if (sc > 0.0) {
        r_lo = std::max(0.0, side * c / sc);
    } else if (sc < 0.0) {
        r_hi = side * c / sc;
        if (r_hi < 0.0) return kInf;
    } else if (side * (0.0 - c) < 0.0) {
        return kInf; // vertical ray entirely on the wrong side
    }
    double r = p.real() * dir.real() + p.imag() * dir.imag();
    r = std::min(std::max(r, r_lo), r_hi);
    return std::abs(p - r * dir);
}

// Is arg(q) within [pi/2 - theta, pi/2 + eta] (closed sector, arg wrapped)?
bool in_closed_sector(Complex q, double theta, double eta)
{
    if (q == Complex{0.0, 0.0}) return true;
    double a = std::atan2(q.imag(), q.real()); // (-pi, pi]
    double lo = kHalfPi - theta, hi = kHalfPi + eta;
    return (a >= lo && a <= hi) || (a + 2.0 * kPi <= hi);
}

} // namespace

ModelSpec ModelSpec::sector(double theta, double eta, Complex shift)
{
    ModelSpec m;
    m.kind = ModelKind::Sector;
    m.theta = theta;
    m.eta = eta;
    m.base_shift = shift;
    m.validate();
    return m;
}

ModelSpec ModelSpec::strip(double width, Complex shift)
{
    ModelSpec m;
    m.kind = ModelKind::Strip;
    m.width = width;
    m.base_shift = shift;
    m.validate();
    return m;
}

ModelSpec ModelSpec::half_plane(Complex shift)
{
    ModelSpec m;
    m.kind = ModelKind::HalfPlane;
    m.base_shift = shift;
    m.validate();
    return m;
}

ModelSpec ModelSpec::parabola(double alpha, Complex shift)
{
    ModelSpec m;
    m.kind = ModelKind::Parabola;
    m.alpha = alpha;
    m.base_shift = shift;
    m.validate();
    return m;
}

ModelSpec ModelSpec::xi(double alpha, double theta, Complex shift)
{
    ModelSpec m;
    m.kind = ModelKind::Xi;
    m.alpha = alpha;
    m.theta = theta;
    m.base_shift = shift;
    m.validate();
    return m;
}

void ModelSpec::validate() const
{
    switch (kind) {
    case ModelKind::Sector:
        if (!(theta >= 0.0 && theta <= kPi && eta >= 0.0 && eta <= kPi && theta + eta > 0.0))
            throw std::invalid_argument("Sector: theta, eta in [0, pi] with theta + eta > 0 required");
        break;
    case ModelKind::Strip:
        if (!(width > 0.0))
            throw std::invalid_argument("Strip: width > 0 required");
        break;
    case ModelKind::HalfPlane:
        break;
    case ModelKind::Parabola:
        if (!(alpha > 1.0))
            throw std::invalid_argument("Parabola: alpha > 1 required");
        break;
    case ModelKind::Xi:
        if (!(alpha > 1.0) || !(theta > 0.0 && theta <= kPi))
            throw std::invalid_argument("Xi: alpha > 1 and theta in (0, pi] required");
        break;
    }
    if (!std::isfinite(base_shift.real()) || !std::isfinite(base_shift.imag()))
        throw std::invalid_argument("ModelSpec: finite base_shift required");
}

bool ModelSpec::closed_form() const
{
    return kind == ModelKind::Sector || kind == ModelKind::Strip || kind == ModelKind::HalfPlane;
}

bool ModelSpec::convex() const
{
    switch (kind) {
    case ModelKind::Sector: return theta + eta <= kPi;
    case ModelKind::Strip:
    case ModelKind::HalfPlane:
    case ModelKind::Parabola: return true;
    case ModelKind::Xi: return theta <= kHalfPi;
    }
    return false;
}

Complex ModelSpec::base_point() const
{
    switch (kind) {
    case ModelKind::Sector: {
        double psi0 = kHalfPi + 0.5 * (eta - theta);
        return {std::cos(psi0), std::sin(psi0)};
    }
    case ModelKind::Strip: return {0.5 * width, 0.0};
    case ModelKind::HalfPlane: return {1.0, 0.0};
    case ModelKind::Parabola:
    case ModelKind::Xi: return {0.0, 1.0};
    }
    return {1.0, 0.0};
}

std::string ModelSpec::describe() const
{
    char buf[128];
    switch (kind) {
    case ModelKind::Sector:
        std::snprintf(buf, sizeof buf, "sector:%.6g,%.6g", theta, eta);
        break;
    case ModelKind::Strip:
        std::snprintf(buf, sizeof buf, "strip:%.6g", width);
        break;
    case ModelKind::HalfPlane:
        std::snprintf(buf, sizeof buf, "halfplane");
        break;
    case ModelKind::Parabola:
        std::snprintf(buf, sizeof buf, "parabola:%.6g", alpha);
        break;
    case ModelKind::Xi:
        std::snprintf(buf, sizeof buf, "xi:%.6g,%.6g", alpha, theta);
        break;
    }
    return buf;
}

ModelSpec parse_model_spec(const std::string& text)
{
    std::string name = text;
    std::string args;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        name = text.substr(0, colon);
        args = text.substr(colon + 1);
    }
    std::vector<double> vals;
    if (!args.empty()) {
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t pos = 0;
            double v;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("model spec: bad number '" + tok + "' in '" + text + "'");
            }
            if (pos != tok.size())
                throw std::invalid_argument("model spec: bad number '" + tok + "' in '" + text + "'");
            vals.push_back(v);
        }
    }
    auto want = [&](size_t n) {
        if (vals.size() != n)
            throw std::invalid_argument("model spec '" + text + "': wrong number of parameters");
    };
    if (name == "sector") { want(2); return ModelSpec::sector(vals[0], vals[1]); }
    if (name == "strip") { want(1); return ModelSpec::strip(vals[0]); }
    if (name == "halfplane") { want(0); return ModelSpec::half_plane(); }
    if (name == "parabola") { want(1); return ModelSpec::parabola(vals[0]); }
    if (name == "xi") { want(2); return ModelSpec::xi(vals[0], vals[1]); }
    throw std::invalid_argument("model spec: unknown kind '" + name +
                                "' (expected sector:T,E strip:W halfplane parabola:A xi:A,T)");
}

double delta_parabola(double s, double alpha)
{
    if (!(s >= 1.0))
        throw std::invalid_argument("delta_parabola: s >= 1 required");
    if (!(alpha > 1.0))
        throw std::invalid_argument("delta_parabola: alpha > 1 required");

    auto f = [&](double x) { return std::pow(x, alpha) + std::pow(x, 2.0 - alpha) / alpha - s; };
    auto df = [&](double x) {
        return alpha * std::pow(x, alpha - 1.0) + (2.0 - alpha) / alpha * std::pow(x, 1.0 - alpha);
    };

    double hi = std::pow(s, 1.0 / alpha); // f(hi) = (1/alpha) hi^{2-alpha} > 0
    double lo = 0.5 * hi;
    if (f(lo) >= 0.0) {
        if (alpha > 2.0) {
            // Largest root lies right of the stationary point of f, where f < 0
            // for every s >= 1.
            lo = std::pow((alpha - 2.0) / (alpha * alpha), 1.0 / (2.0 * alpha - 2.0));
        } else {
            // f is increasing and f(0+) <= 1/2 - s < 0: widen downward.
            while (f(lo) >= 0.0 && lo > 1e-300)
                lo *= 0.5;
        }
    }
    double x = solve_bracketed(f, df, lo, hi, 1e-12);
    double y = std::pow(x, alpha) - s;
    return std::hypot(x, y);
}

XiGaps delta_xi(double t, double alpha, double theta)
{
    if (!(t >= 1.0))
        throw std::invalid_argument("delta_xi: t >= 1 required");
    if (!(alpha > 1.0) || !(theta > 0.0 && theta <= kPi))
        throw std::invalid_argument("delta_xi: alpha > 1 and theta in (0, pi] required");
    double dp = (theta < kHalfPi) ? std::sin(theta) * t : t;
    return XiGaps{dp, delta_parabola(t, alpha)};
}

double boundary_gap(const ModelSpec& model, double s)
{
    if (!(s >= 0.0))
        throw std::invalid_argument("boundary_gap: s >= 0 required");
    switch (model.kind) {
    case ModelKind::Sector: {
        Complex p = model.base_point() + Complex{0.0, s};
        return std::min(dist_to_ray(p, kHalfPi - model.theta),
                        dist_to_ray(p, kHalfPi + model.eta));
    }
    case ModelKind::Strip: return 0.5 * model.width;
    case ModelKind::HalfPlane: return 1.0;
    case ModelKind::Parabola: return delta_parabola(1.0 + s, model.alpha);
    case ModelKind::Xi: {
        XiGaps g = delta_xi(1.0 + s, model.alpha, model.theta);
        return std::min(g.delta_plus, g.delta_minus);
    }
    }
    throw std::logic_error("boundary_gap: unreachable");
}

QuasiSymmetryReport quasi_symmetry_scan(const ModelSpec& model,
                                        const std::vector<double>& t_grid)
{
    model.validate();
    if (t_grid.empty())
        throw std::invalid_argument("quasi_symmetry_scan: empty grid");
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 1.0))
            throw std::invalid_argument("quasi_symmetry_scan: grid values must be >= 1");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("quasi_symmetry_scan: grid must be increasing");
    }

    QuasiSymmetryReport rep;
    rep.t_grid = t_grid;
    rep.ratio.reserve(t_grid.size());

    Complex z0 = model.base_point();
    for (double t : t_grid) {
        double gp = kInf, gm = kInf; // one-sided gaps before the min(t, .) cap
        switch (model.kind) {
        case ModelKind::Sector: {
            Complex p = z0 + Complex{0.0, t};
            double c = z0.real();
            double a1 = kHalfPi - model.theta, a2 = kHalfPi + model.eta;
            gp = std::min(dist_to_ray_sided(p, a1, c, +1), dist_to_ray_sided(p, a2, c, +1));
            gm = std::min(dist_to_ray_sided(p, a1, c, -1), dist_to_ray_sided(p, a2, c, -1));
            break;
        }
        case ModelKind::Strip:
            gp = gm = 0.5 * model.width;
            break;
        case ModelKind::HalfPlane:
            gp = kInf;
            gm = 1.0;
            break;
        case ModelKind::Parabola:
            gp = gm = delta_parabola(1.0 + t, model.alpha);
            break;
        case ModelKind::Xi: {
            XiGaps g = delta_xi(1.0 + t, model.alpha, model.theta);
            gp = g.delta_plus;
            gm = g.delta_minus;
            break;
        }
        }
        double dplus = std::min(t, gp);
        double dminus = std::min(t, gm);
        rep.ratio.push_back(dplus / dminus);
    }

    rep.K_estimate = 1.0;
    for (double r : rep.ratio)
        rep.K_estimate = std::max(rep.K_estimate, std::max(r, 1.0 / r));

    if (t_grid.size() >= 2 && t_grid.back() > t_grid.front()) {
        std::vector<double> lx, ly;
        for (size_t i = 0; i < t_grid.size(); ++i) {
            lx.push_back(std::log(t_grid[i]));
            ly.push_back(std::log(std::max(rep.ratio[i], 1.0 / rep.ratio[i])));
        }
        rep.fitted_exponent = fit_affine(lx, ly).first;
    }
    rep.quasi_symmetric = rep.fitted_exponent <= 0.05;
    return rep;
}

namespace {

// Does q + W(theta1,eta1) fit inside W(theta2,eta2)?  Exact for q = 0 (pure
// angular containment) and for convex outer sectors; unresolved otherwise.
int sector_in_sector(Complex q, double t1, double e1, double t2, double e2)
{
    bool angles = (t1 <= t2) && (e1 <= e2);
    if (q == Complex{0.0, 0.0})
        return angles ? 1 : 0;
    if (!angles)
        return 0;
    if (t2 + e2 <= kPi) // convex outer: q in closure is necessary and sufficient
        return in_closed_sector(q, t2, e2) ? 1 : 0;
    return -1; // reflex outer with shift: leave to sampling
}

bool strip_in_sector(double re1, double w1, const ModelSpec& outer, double re2)
{
    bool need_right = re1 + w1 > re2;
    bool need_left = re1 < re2;
    if (need_right && outer.theta != kPi) return false;
    if (need_left && outer.eta != kPi) return false;
    // The deleted boundary ray below the apex must miss the open strip.
    if (re2 > re1 && re2 < re1 + w1) return false;
    return true;
}

// Right-side tangency test for a parabola boundary lifted by c against the
// ray at angle psi: (c + x^alpha) cos(psi) - x sin(psi) >= 0 for all x >= 0.
bool parabola_side_fits(double c, double alpha, double half_opening)
{
    if (c < 0.0) return false;
    if (half_opening >= kHalfPi) return true;
    double psi = kHalfPi - half_opening; // ray angle measured from the x-axis
    double cp = std::cos(psi), sp = std::sin(psi);
    if (sp <= 0.0) return true;
    double xs = std::pow(sp / (alpha * cp), 1.0 / (alpha - 1.0));
    return (c + std::pow(xs, alpha)) * cp - xs * sp >= 0.0;
}

std::vector<Complex> boundary_samples(const ModelSpec& m, int count)
{
    std::vector<Complex> out;
    out.reserve(count + 4);
    int half = count / 2;
    auto logspan = [&](int i, int n) {
        // symmetric log grid over [1e-6, 1e6]
        double lo = std::log(1e-6), hi = std::log(1e6);
        return std::exp(lo + (hi - lo) * double(i) / double(n - 1));
    };
    switch (m.kind) {
    case ModelKind::Sector: {
        double a1 = kHalfPi - m.theta, a2 = kHalfPi + m.eta;
        for (int i = 0; i < half; ++i) {
            double r = logspan(i, half);
            out.push_back(Complex{r * std::cos(a1), r * std::sin(a1)});
            out.push_back(Complex{r * std::cos(a2), r * std::sin(a2)});
        }
        out.push_back({0.0, 0.0});
        break;
    }
    case ModelKind::Strip:
        for (int i = 0; i < half; ++i) {
            double y = logspan(i, half);
            out.push_back(Complex{0.0, y});
            out.push_back(Complex{0.0, -y});
            out.push_back(Complex{m.width, y});
            out.push_back(Complex{m.width, -y});
        }
        break;
    case ModelKind::HalfPlane:
        for (int i = 0; i < half; ++i) {
            double y = logspan(i, half);
            out.push_back(Complex{0.0, y});
            out.push_back(Complex{0.0, -y});
        }
        out.push_back({0.0, 0.0});
        break;
    case ModelKind::Parabola:
        for (int i = 0; i < half; ++i) {
            double x = logspan(i, half);
            out.push_back(Complex{x, std::pow(x, m.alpha)});
            out.push_back(Complex{-x, std::pow(x, m.alpha)});
        }
        out.push_back({0.0, 0.0});
        break;
    case ModelKind::Xi: {
        double a1 = kHalfPi - m.theta;
        for (int i = 0; i < half; ++i) {
            double r = logspan(i, half);
            out.push_back(Complex{r * std::cos(a1), r * std::sin(a1)});
            out.push_back(Complex{-r, std::pow(r, m.alpha)});
        }
        out.push_back({0.0, 0.0});
        break;
    }
    }
    for (auto& z : out)
        z += m.base_shift;
    return out;
}

bool in_closure(const ModelSpec& m, Complex z)
{
    Complex q = z - m.base_shift;
    double tol = 1e-9 * (1.0 + std::abs(q));
    switch (m.kind) {
    case ModelKind::Sector: {
        if (std::abs(q) <= tol) return true;
        double a = std::atan2(q.imag(), q.real());
        double lo = kHalfPi - m.theta, hi = kHalfPi + m.eta;
        double slack = tol / std::abs(q) + 1e-12;
        return (a >= lo - slack && a <= hi + slack) || (a + 2.0 * kPi <= hi + slack);
    }
    case ModelKind::Strip:
        return q.real() >= -tol && q.real() <= m.width + tol;
    case ModelKind::HalfPlane:
        return q.real() >= -tol;
    case ModelKind::Parabola:
        return q.imag() >= std::pow(std::abs(q.real()), m.alpha) - tol;
    case ModelKind::Xi: {
        if (q.real() <= tol && q.imag() >= std::pow(std::abs(q.real()), m.alpha) - tol)
            return true;
        if (std::abs(q) <= tol) return true;
        double a = std::atan2(q.imag(), q.real());
        double slack = tol / std::max(std::abs(q), tol) + 1e-12;
        return a >= kHalfPi - m.theta - slack && a <= kHalfPi + slack;
    }
    }
    return false;
}

} // namespace

Inclusion inclusion_probe(const ModelSpec& inner, const ModelSpec& outer)
{
    inner.validate();
    outer.validate();

    // The vertical half-plane is the sector W(pi, 0); fold it in.
    auto canon = [](const ModelSpec& m) {
        if (m.kind == ModelKind::HalfPlane)
            return ModelSpec::sector(kPi, 0.0, m.base_shift);
        return m;
    };
    ModelSpec in = canon(inner);
    ModelSpec out = canon(outer);
    Complex q = in.base_shift - out.base_shift;

    if (in.kind == out.kind && q == Complex{0.0, 0.0}) {
        switch (in.kind) {
        case ModelKind::Sector:
            return {in.theta <= out.theta && in.eta <= out.eta, true};
        case ModelKind::Strip:
            return {in.width <= out.width, true};
        case ModelKind::Parabola:
            if (in.alpha == out.alpha) return {true, true};
            break;
        case ModelKind::Xi:
            if (in.alpha == out.alpha)
                return {in.theta <= out.theta, true};
            break;
        default: break;
        }
    }

    switch (in.kind) {
    case ModelKind::Sector:
        if (out.kind == ModelKind::Sector) {
            int r = sector_in_sector(q, in.theta, in.eta, out.theta, out.eta);
            if (r >= 0) return {r == 1, true};
        } else if (out.kind == ModelKind::Strip) {
            return {false, true}; // a nondegenerate cone is horizontally unbounded
        } else if (out.kind == ModelKind::Xi) {
            if (in.eta == 0.0 && in.theta <= out.theta) {
                if (q == Complex{0.0, 0.0})
                    return {true, true};
                if (out.theta <= kHalfPi && in_closed_sector(q, out.theta, 0.0))
                    return {true, true};
            }
        }
        break;
    case ModelKind::Strip:
        if (out.kind == ModelKind::Sector)
            return {strip_in_sector(in.base_shift.real(), in.width, out,
                                    out.base_shift.real()), true};
        if (out.kind == ModelKind::Strip) {
            double a1 = in.base_shift.real(), a2 = out.base_shift.real();
            return {a1 >= a2 && a1 + in.width <= a2 + out.width, true};
        }
        return {false, true}; // Parabola/Xi meet vertical lines in sets bounded below
    case ModelKind::Parabola:
        if (out.kind == ModelKind::Sector && q.real() == 0.0) {
            double c = -q.imag(); // how far the apex sits below the parabola base
            return {parabola_side_fits(c, in.alpha, out.theta) &&
                    parabola_side_fits(c, in.alpha, out.eta), true};
        }
        if (out.kind == ModelKind::Parabola && q.real() == 0.0) {
            double c = q.imag();
            if (in.alpha == out.alpha) return {c >= 0.0, true};
            if (in.alpha < out.alpha) return {false, true};
            double xs = std::pow(out.alpha / in.alpha, 1.0 / (in.alpha - out.alpha));
            double need = std::pow(xs, out.alpha) - std::pow(xs, in.alpha);
            return {c >= need, true};
        }
        if (out.kind == ModelKind::Strip) return {false, true};
        break;
    case ModelKind::Xi:
        if (out.kind == ModelKind::Sector && q == Complex{0.0, 0.0})
            return {in.theta <= out.theta && out.eta >= kHalfPi, true};
        if (out.kind == ModelKind::Strip) return {false, true};
        break;
    default: break;
    }

    // No analytic predicate: sampled-boundary evidence.
    for (Complex z : boundary_samples(in, 10000))
        if (!in_closure(out, z))
            return {false, false};
    return {true, false};
}

bool inclusion_check(const ModelSpec& inner, const ModelSpec& outer)
{
    return inclusion_probe(inner, outer).included;
}

} // namespace orbspeed
