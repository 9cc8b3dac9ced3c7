// Command-line front end: model construction, orbit/speed/harmonic-measure
// computation, verification suites, and CSV/JSON emission for plotting.
//
// Exit codes: 0 pass/success, 1 computation failure or failed verification,
// 2 usage or precondition error.

#include "orbspeed/domains.hpp"
#include "orbspeed/harmonic.hpp"
#include "orbspeed/models.hpp"
#include "orbspeed/numerics.hpp"
#include "orbspeed/speeds.hpp"
#include "orbspeed/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPi = 3.14159265358979323846;

using orbspeed::CheckStatus;
using orbspeed::Complex;
using orbspeed::GridSpacing;
using orbspeed::McParams;
using orbspeed::ModelSpec;
using orbspeed::Orbit;
using orbspeed::VerificationReport;

struct GridFlags {
    double t_min = 1.0;
    double t_max = 1e6;
    size_t n = 200;
    std::string spacing = "log";

    GridSpacing spacing_kind() const
    {
        if (spacing == "log")
            return GridSpacing::Log;
        if (spacing == "linear")
            return GridSpacing::Linear;
        throw CLI::ValidationError("--spacing", "expected 'log' or 'linear'");
    }

    std::vector<double> build() const
    {
        return orbspeed::make_grid(t_min, t_max, n, spacing_kind());
    }
};

void add_grid_flags(CLI::App* cmd, GridFlags& g)
{
    cmd->add_option("--tmin", g.t_min, "start of the t window");
    cmd->add_option("--tmax", g.t_max, "end of the t window");
    cmd->add_option("--n", g.n, "number of samples");
    cmd->add_option("--spacing", g.spacing, "grid spacing: log or linear");
}

// key=value config file; '#' comments.  Explicit command-line flags win,
// repeated keys accumulate for repeatable options.
void apply_config(CLI::App* cmd, const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw CLI::ValidationError("--config", "cannot open " + path);
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t\r");
        size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<CLI::Option*> order;
    std::map<CLI::Option*, std::vector<std::string>> grouped;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) +
                                                       ": expected key=value");
        std::string key = trim(s.substr(0, eq));
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw CLI::ValidationError("--config", "unknown key '" + key + "' for `" +
                                                       cmd->get_name() + "`");
        if (grouped.find(opt) == grouped.end())
            order.push_back(opt);
        grouped[opt].push_back(trim(s.substr(eq + 1)));
    }
    for (CLI::Option* opt : order) {
        if (opt->count() > 0)
            continue; // given on the command line
        for (const std::string& v : grouped[opt])
            opt->add_result(v);
        opt->run_callback();
    }
}

uint64_t default_seed()
{
    if (const char* env = std::getenv("ORBSPEED_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0')
            return v;
        throw CLI::ValidationError("ORBSPEED_SEED", "not an unsigned integer");
    }
    return 42;
}

void add_mc_flags(CLI::App* cmd, McParams& mc)
{
    cmd->add_option("--mc-n", mc.n, "Monte Carlo walk count");
    cmd->add_option("--eps", mc.eps, "walk-on-spheres termination shell");
    cmd->add_option("--seed", mc.seed, "random seed (env ORBSPEED_SEED overrides the default)");
    cmd->add_option("--smax", mc.s_max, "slit truncation time (0 = automatic)");
    cmd->add_option("--max-steps", mc.max_steps, "per-walk step budget");
    cmd->add_option("--refinement", mc.refinement, "slit samples per unit hyperbolic length");
    cmd->add_option("--workers", mc.workers, "worker threads (never changes results)");
}

void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    os << content;
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

std::string num17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Orbit load_orbit_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open orbit file: " + path);
    return orbspeed::read_orbit_csv(is);
}

// --- command implementations --------------------------------------------

// --model may arrive via flag or config file, so it cannot be a parse-time
// requirement; enforce it here instead.
ModelSpec require_model(const std::string& model_text)
{
    if (model_text.empty())
        throw std::invalid_argument(
            "--model is required (on the command line or in the config file)");
    return orbspeed::parse_model_spec(model_text);
}

int run_orbit(const std::string& model_text, const GridFlags& grid,
              const std::string& out)
{
    ModelSpec model = require_model(model_text);
    Orbit orbit = orbspeed::orbit_grid(model, grid.t_min, grid.t_max, grid.n,
                                       grid.spacing_kind());
    std::ostringstream os;
    orbspeed::write_orbit_csv(os, orbit);
    emit(out, os.str());
    return 0;
}

int run_speeds(const std::string& model_text, const GridFlags& grid,
               const std::string& out)
{
    ModelSpec model = require_model(model_text);
    Orbit orbit = orbspeed::orbit_grid(model, grid.t_min, grid.t_max, grid.n,
                                       grid.spacing_kind());
    std::ostringstream os;
    os << "t,v,v_o,v_T,dist_to_tau,one_minus_mod\n";
    for (size_t i = 0; i < orbit.size(); ++i) {
        orbspeed::SpeedTriple tr = orbspeed::speed_triple(orbit.points[i], orbit.times[i]);
        orbspeed::EuclidRates er = orbspeed::euclid_rates(orbit.points[i]);
        os << num17(tr.t) << ',' << num17(tr.v) << ',' << num17(tr.v_o) << ','
           << num17(tr.v_T) << ',' << num17(er.dist_to_tau()) << ','
           << num17(er.one_minus_mod()) << '\n';
    }
    emit(out, os.str());
    return 0;
}

int run_bounds(const std::string& model_text, const GridFlags& grid,
               const std::string& out)
{
    ModelSpec model = require_model(model_text);
    std::vector<double> ts = grid.build();
    std::ostringstream os;
    os << "t,lower,upper,method\n";
    for (double t : ts) {
        orbspeed::SpeedBound b = orbspeed::speed_bounds_quadrature(model, t);
        os << num17(b.t) << ',' << num17(b.lower) << ',' << num17(b.upper) << ','
           << b.method << '\n';
    }
    emit(out, os.str());
    return 0;
}

std::string hm_json(const orbspeed::HMEstimate& est)
{
    nlohmann::ordered_json j;
    j["mean"] = est.mean;
    j["std_err"] = est.std_err;
    j["n"] = est.n;
    j["eps_shell"] = est.eps_shell;
    j["max_steps"] = est.max_steps;
    j["seed"] = est.seed;
    j["s_max"] = est.s_max;
    j["discarded"] = est.discarded;
    j["valid"] = est.valid;
    return j.dump(2) + "\n";
}

int run_hm(const std::string& target, double a, const std::string& model_text,
           double t, const McParams& mc, double start_re, double start_im,
           const std::string& out)
{
    Complex start{start_re, start_im};
    orbspeed::HMEstimate est;
    if (target == "theta") {
        est = orbspeed::wos_measure(nullptr, start,
                                    orbspeed::WosTarget{orbspeed::WosTarget::Theta, a},
                                    mc.n, mc.eps, mc.seed, mc.max_steps, mc.workers);
    } else if (target == "slit") {
        if (model_text.empty())
            throw std::invalid_argument("hm --target slit requires --model");
        ModelSpec model = orbspeed::parse_model_spec(model_text);
        double lt = orbspeed::orbit_point(model, t).log_rho;
        double s_max = mc.s_max > 0.0
                           ? mc.s_max
                           : orbspeed::time_for_log_modulus(model, lt + std::log(1000.0));
        Orbit orbit = orbspeed::orbit_grid(model, t, s_max, 65, GridSpacing::Log);
        orbspeed::SlitPolyline slit = orbspeed::build_slit(orbit, t, s_max, mc.refinement);
        est = orbspeed::wos_measure(&slit, start,
                                    orbspeed::WosTarget{orbspeed::WosTarget::Slit, 0.0},
                                    mc.n, mc.eps, mc.seed, mc.max_steps, mc.workers);
    } else {
        throw CLI::ValidationError("--target", "expected 'theta' or 'slit'");
    }
    emit(out, hm_json(est));
    return 0;
}

int report_exit(const VerificationReport& rep, const std::string& out)
{
    emit(out, rep.to_json() + "\n");
    return rep.status == CheckStatus::Pass ? 0 : 1;
}

VerificationReport merge_reports(std::vector<VerificationReport> reports)
{
    VerificationReport merged = std::move(reports.front());
    for (size_t i = 1; i < reports.size(); ++i) {
        VerificationReport& r = reports[i];
        merged.margin = std::min(merged.margin, r.margin);
        if (r.status == CheckStatus::Fail)
            merged.status = CheckStatus::Fail;
        else if (r.status == CheckStatus::Flagged && merged.status == CheckStatus::Pass)
            merged.status = CheckStatus::Flagged;
        merged.grid += "; " + r.grid;
        merged.details.insert(merged.details.end(), r.details.begin(), r.details.end());
        merged.notes.insert(merged.notes.end(), r.notes.begin(), r.notes.end());
    }
    return merged;
}

struct VerifyFlags {
    std::string suite;
    std::vector<std::string> models;
    std::vector<std::string> orbit_files;
    std::vector<double> ts;
    std::string inner, outer;
    std::string claim;
    double alpha = 2.0;
    double theta = kPi / 6.0;
    bool synthetic = false;
    bool no_truncation_check = false;
    GridFlags grid;
    McParams mc;
    std::string out = "-";
};

std::vector<Orbit> gather_orbits(const VerifyFlags& vf, const std::vector<double>& grid)
{
    std::vector<Orbit> orbits;
    if (vf.models.empty() && vf.orbit_files.empty() && !vf.synthetic) {
        for (const ModelSpec& m : orbspeed::default_models())
            orbits.push_back(orbspeed::orbit_at_times(m, grid));
    } else {
        for (const std::string& text : vf.models)
            orbits.push_back(
                orbspeed::orbit_at_times(orbspeed::parse_model_spec(text), grid));
        for (const std::string& path : vf.orbit_files)
            orbits.push_back(load_orbit_csv(path));
        if (vf.synthetic)
            orbits.push_back(orbspeed::synthetic_oscillating_orbit(0.0, 60.0, 1200));
    }
    return orbits;
}

int run_verify(const VerifyFlags& vf)
{
    const std::string& suite = vf.suite;
    std::vector<double> grid = vf.grid.build();
    if (suite == "pythagoras")
        return report_exit(orbspeed::suite_pythagoras(gather_orbits(vf, grid)), vf.out);
    if (suite == "julia")
        return report_exit(orbspeed::suite_julia(gather_orbits(vf, grid)), vf.out);
    if (suite == "ipereucl")
        return report_exit(orbspeed::suite_ipereucl(gather_orbits(vf, grid)), vf.out);
    if (suite == "dwmono")
        return report_exit(orbspeed::suite_dwmono(gather_orbits(vf, grid)), vf.out);
    if (suite == "totalimpliesortho")
        return report_exit(orbspeed::suite_totalimpliesortho(gather_orbits(vf, grid)),
                           vf.out);

    if (suite == "hall") {
        McParams mc = vf.mc;
        mc.truncation_check = !vf.no_truncation_check;
        std::vector<ModelSpec> models;
        for (const std::string& text : vf.models)
            models.push_back(orbspeed::parse_model_spec(text));
        if (models.empty())
            models = {ModelSpec::sector(kPi / 2, kPi / 2), ModelSpec::sector(kPi / 4, kPi / 4)};
        std::vector<double> ts = vf.ts.empty() ? std::vector<double>{10.0, 100.0} : vf.ts;
        return report_exit(orbspeed::suite_hall(models, ts, mc), vf.out);
    }

    if (suite == "markov") {
        std::vector<ModelSpec> models;
        for (const std::string& text : vf.models)
            models.push_back(orbspeed::parse_model_spec(text));
        if (models.empty())
            models = {ModelSpec::sector(kPi / 2, kPi / 2), ModelSpec::sector(kPi / 4, kPi / 4)};
        double t = vf.ts.empty() ? 10.0 : vf.ts.front();
        return report_exit(orbspeed::suite_markov(models, t, vf.mc), vf.out);
    }

    if (suite == "monotone") {
        std::vector<VerificationReport> reports;
        if (!vf.inner.empty() || !vf.outer.empty()) {
            if (vf.inner.empty() || vf.outer.empty())
                throw std::invalid_argument("verify monotone needs both --inner and --outer");
            reports.push_back(orbspeed::monotonicity_experiment(
                orbspeed::parse_model_spec(vf.inner), orbspeed::parse_model_spec(vf.outer),
                grid));
        } else {
            reports.push_back(orbspeed::monotonicity_experiment(
                ModelSpec::sector(kPi / 4, kPi / 4), ModelSpec::sector(kPi / 2, kPi / 2),
                grid));
            reports.push_back(orbspeed::monotonicity_experiment(
                ModelSpec::strip(1.0), ModelSpec::half_plane(), grid));
        }
        return report_exit(merge_reports(std::move(reports)), vf.out);
    }

    if (suite == "rates") {
        using orbspeed::RateClaim;
        std::vector<VerificationReport> reports;
        auto sector_grid = orbspeed::make_grid(10.0, 1e6, 200, GridSpacing::Log);
        auto parabola_grid = orbspeed::make_grid(10.0, 1e8, 25, GridSpacing::Log);
        const bool all = vf.claim.empty();
        if (all || vf.claim == "betsakos") {
            ModelSpec m = vf.models.empty() ? ModelSpec::sector(kPi / 2, kPi / 2)
                                            : orbspeed::parse_model_spec(vf.models.front());
            reports.push_back(
                orbspeed::rate_check(m, RateClaim::betsakos_half(), sector_grid));
        }
        if (all || vf.claim == "sector") {
            if (!vf.models.empty()) {
                ModelSpec m = orbspeed::parse_model_spec(vf.models.front());
                reports.push_back(orbspeed::rate_check(
                    m, RateClaim::sector_exponent(m.theta, m.eta), sector_grid));
            } else {
                for (auto [th, et] : {std::pair{kPi / 2, kPi / 2}, {kPi / 4, kPi / 4},
                                      {kPi / 6, kPi / 3}}) {
                    reports.push_back(orbspeed::rate_check(
                        ModelSpec::sector(th, et), RateClaim::sector_exponent(th, et),
                        sector_grid));
                }
            }
        }
        if (all || vf.claim == "parabola") {
            ModelSpec m = vf.models.empty() ? ModelSpec::parabola(2.0)
                                            : orbspeed::parse_model_spec(vf.models.front());
            reports.push_back(
                orbspeed::rate_check(m, RateClaim::parabola_stretched(m.alpha), parabola_grid));
        }
        if (all || vf.claim == "xi") {
            ModelSpec m = vf.models.empty() ? ModelSpec::xi(vf.alpha, vf.theta)
                                            : orbspeed::parse_model_spec(vf.models.front());
            reports.push_back(
                orbspeed::rate_check(m, RateClaim::xi_polynomial(m.theta), sector_grid));
        }
        if (reports.empty())
            throw std::invalid_argument(
                "unknown --claim (expected betsakos, sector, parabola, or xi)");
        return report_exit(merge_reports(std::move(reports)), vf.out);
    }

    if (suite == "xitangent") {
        GridFlags g = vf.grid;
        if (g.t_min == 1.0 && g.t_max == 1e6 && g.n == 200) { // untouched defaults
            g.t_min = 10.0;
            g.t_max = 1e8;
            g.n = 25;
        }
        return report_exit(orbspeed::xi_tangential_check(vf.alpha, vf.theta, g.build()),
                           vf.out);
    }

    if (suite == "gammastar") {
        std::vector<Orbit> orbits;
        if (vf.models.empty() && vf.orbit_files.empty()) {
            for (const ModelSpec& m : orbspeed::default_models())
                orbits.push_back(orbspeed::orbit_at_times(m, grid));
            orbits.push_back(orbspeed::synthetic_oscillating_orbit(0.0, 60.0, 1200));
        } else {
            orbits = gather_orbits(vf, grid);
        }
        return report_exit(orbspeed::suite_gammastar(orbits, 50), vf.out);
    }

    throw std::invalid_argument(
        "unknown suite '" + suite +
        "' (expected pythagoras, julia, ipereucl, dwmono, totalimpliesortho, hall, "
        "markov, monotone, rates, xitangent, gammastar)");
}

int run_fit(const std::string& model_text, const std::string& quantity,
            const std::string& shape, double gamma, const GridFlags& grid,
            const std::string& out)
{
    ModelSpec model = require_model(model_text);
    std::vector<double> ts = grid.build();
    std::vector<double> values(ts.size());
    if (quantity == "v" || quantity == "v_o" || quantity == "v_T") {
        Orbit orbit = orbspeed::orbit_at_times(model, ts);
        for (size_t i = 0; i < ts.size(); ++i) {
            orbspeed::SpeedTriple tr = orbspeed::speed_triple(orbit.points[i], ts[i]);
            values[i] = quantity == "v" ? tr.v : quantity == "v_o" ? tr.v_o : tr.v_T;
        }
    } else if (quantity == "lower" || quantity == "upper") {
        for (size_t i = 0; i < ts.size(); ++i) {
            orbspeed::SpeedBound b = orbspeed::speed_bounds_quadrature(model, ts[i]);
            values[i] = quantity == "lower" ? b.lower : b.upper;
        }
    } else {
        throw CLI::ValidationError("--quantity", "expected v, v_o, v_T, lower, or upper");
    }
    orbspeed::FitShape fs;
    if (shape == "log")
        fs = orbspeed::FitShape::LogT;
    else if (shape == "power")
        fs = orbspeed::FitShape::Power;
    else
        throw CLI::ValidationError("--shape", "expected 'log' or 'power'");
    orbspeed::AsymptoteFit fit = orbspeed::fit_asymptote(ts, values, fs, gamma);
    nlohmann::ordered_json j;
    j["shape"] = shape == "log" ? "log_t" : "power";
    j["gamma"] = fit.gamma;
    j["coefficient"] = fit.coefficient;
    j["residual_max"] = fit.residual_max;
    j["window"] = {fit.window_lo, fit.window_hi};
    emit(out, j.dump(2) + "\n");
    return 0;
}

int run_scan(const std::string& model_text, const std::string& orbit_file,
             bool synthetic, const GridFlags& grid, const std::string& out)
{
    Orbit orbit;
    std::vector<double> ts;
    if (!model_text.empty()) {
        ts = grid.build();
        orbit = orbspeed::orbit_at_times(orbspeed::parse_model_spec(model_text), ts);
    } else if (!orbit_file.empty()) {
        orbit = load_orbit_csv(orbit_file);
    } else if (synthetic) {
        orbit = orbspeed::synthetic_oscillating_orbit(0.0, 60.0, 1200);
    } else {
        throw std::invalid_argument("scan needs --model, --orbit, or --synthetic");
    }
    if (ts.empty()) {
        for (double t : orbit.times)
            if (t >= grid.t_min && t <= grid.t_max)
                ts.push_back(t);
        if (ts.empty())
            throw std::invalid_argument("scan window contains no orbit samples");
    }
    std::vector<orbspeed::ScanPoint> series = orbspeed::question_scan(orbit, ts);
    std::ostringstream os;
    os << "t,inf_value,s_at_min\n";
    for (const auto& p : series)
        os << num17(p.t) << ',' << num17(p.inf_value) << ',' << num17(p.s_at_min) << '\n';
    emit(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"orbit speeds and harmonic measures of holomorphic semigroups"};
    app.require_subcommand(1);
    app.get_formatter()->column_width(40);

    std::string model_text, out = "-", config_path;
    GridFlags grid;

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "emit an orbit CSV (t,log_rho,theta)");
    orbit_cmd->add_option("--model", model_text, "model spec, e.g. sector:0.785,0.785");
    add_grid_flags(orbit_cmd, grid);
    orbit_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    orbit_cmd->add_option("--out", out, "output path (- for stdout)");

    CLI::App* speeds_cmd = app.add_subcommand("speeds", "emit speed/rate CSV");
    speeds_cmd->add_option("--model", model_text, "model spec");
    add_grid_flags(speeds_cmd, grid);
    speeds_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    speeds_cmd->add_option("--out", out, "output path");

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "emit quadrature speed bounds CSV");
    bounds_cmd->add_option("--model", model_text, "model spec");
    add_grid_flags(bounds_cmd, grid);
    bounds_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    bounds_cmd->add_option("--out", out, "output path");

    CLI::App* hm_cmd = app.add_subcommand("hm", "walk-on-spheres harmonic measure");
    std::string hm_target = "theta";
    double hm_a = 1.0, hm_t = 10.0, start_re = 1.0, start_im = 0.0;
    McParams hm_mc;
    hm_mc.seed = default_seed();
    hm_cmd->add_option("--target", hm_target, "theta (rays beyond a) or slit");
    hm_cmd->add_option("--a", hm_a, "ray cutoff for the theta target");
    hm_cmd->add_option("--model", model_text, "model spec (slit target)");
    hm_cmd->add_option("--t", hm_t, "slit start time");
    hm_cmd->add_option("--start-re", start_re, "walk start, real part");
    hm_cmd->add_option("--start-im", start_im, "walk start, imaginary part");
    add_mc_flags(hm_cmd, hm_mc);
    hm_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    hm_cmd->add_option("--out", out, "output path");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    VerifyFlags vf;
    vf.mc.seed = default_seed();
    verify_cmd
        ->add_option("suite", vf.suite,
                     "pythagoras|julia|ipereucl|dwmono|totalimpliesortho|hall|markov|"
                     "monotone|rates|xitangent|gammastar")
        ->required();
    verify_cmd->add_option("--model", vf.models, "model spec (repeatable)");
    verify_cmd->add_option("--orbit", vf.orbit_files, "orbit CSV file (repeatable)");
    verify_cmd->add_option("--t", vf.ts, "time(s) for MC suites (repeatable)");
    verify_cmd->add_option("--inner", vf.inner, "inner model (monotone)");
    verify_cmd->add_option("--outer", vf.outer, "outer model (monotone)");
    verify_cmd->add_option("--claim", vf.claim, "rates claim: betsakos|sector|parabola|xi");
    verify_cmd->add_option("--alpha", vf.alpha, "alpha (xitangent, rates xi)");
    verify_cmd->add_option("--theta", vf.theta, "theta in radians (xitangent, rates xi)");
    verify_cmd->add_flag("--synthetic", vf.synthetic, "include the synthetic probe orbit");
    verify_cmd->add_flag("--no-truncation-check", vf.no_truncation_check,
                         "skip the slit-truncation sensitivity rerun (hall)");
    add_grid_flags(verify_cmd, vf.grid);
    verify_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    add_mc_flags(verify_cmd, vf.mc);
    verify_cmd->add_option("--out", vf.out, "output path");

    CLI::App* fit_cmd = app.add_subcommand("fit", "fit an asymptotic shape");
    std::string fit_quantity = "v_o", fit_shape = "log";
    double fit_gamma = 1.0;
    fit_cmd->add_option("--model", model_text, "model spec");
    fit_cmd->add_option("--quantity", fit_quantity, "v|v_o|v_T|lower|upper");
    fit_cmd->add_option("--shape", fit_shape, "log or power");
    fit_cmd->add_option("--gamma", fit_gamma, "exponent for the power shape");
    add_grid_flags(fit_cmd, grid);
    fit_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    fit_cmd->add_option("--out", out, "output path");

    CLI::App* scan_cmd =
        app.add_subcommand("scan", "harmonic-measure infimum series along an orbit");
    std::string scan_orbit_file;
    bool scan_synthetic = false;
    scan_cmd->add_option("--model", model_text, "model spec");
    scan_cmd->add_option("--orbit", scan_orbit_file, "orbit CSV file");
    scan_cmd->add_flag("--synthetic", scan_synthetic, "use the synthetic probe orbit");
    add_grid_flags(scan_cmd, grid);
    scan_cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
    scan_cmd->add_option("--out", out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty())
            apply_config(app.get_subcommands().front(), config_path);
        if (orbit_cmd->parsed())
            return run_orbit(model_text, grid, out);
        if (speeds_cmd->parsed())
            return run_speeds(model_text, grid, out);
        if (bounds_cmd->parsed())
            return run_bounds(model_text, grid, out);
        if (hm_cmd->parsed())
            return run_hm(hm_target, hm_a, model_text, hm_t, hm_mc, start_re, start_im,
                          out);
        if (verify_cmd->parsed())
            return run_verify(vf);
        if (fit_cmd->parsed())
            return run_fit(model_text, fit_quantity, fit_shape, fit_gamma, grid, out);
        if (scan_cmd->parsed())
            return run_scan(model_text, scan_orbit_file, scan_synthetic, grid, out);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) { // includes bound_only_error
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
