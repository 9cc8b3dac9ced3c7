#include "orbspeed/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace orbspeed {

namespace {

struct SimpsonCtx {
    const std::function<double(double)>& f;
    long evals_left;

    double eval(double x)
    {
        if (--evals_left < 0)
            throw std::runtime_error("adaptive_simpson: evaluation budget exhausted");
        return f(x);
    }
};

double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm, double fb,
                   double whole, double eps, int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = ctx.eval(lm), frm = ctx.eval(rm);
    double h = b - a;
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double s2 = left + right;
    double err = (s2 - whole) / 15.0;
    if (depth > 0 && std::abs(err) <= eps)
        return s2 + err;
    if (depth > 60)
        return s2 + err; // interval width is at machine precision
    return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)
         + simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, long max_evals)
{
    if (!(a < b))
        throw std::invalid_argument("adaptive_simpson: a < b required");
    SimpsonCtx ctx{f, max_evals};
    double fa = ctx.eval(a), fb = ctx.eval(b), fm = ctx.eval(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double eps = rel_tol * std::abs(whole);
    if (eps == 0.0)
        eps = rel_tol;
    return simpson_rec(ctx, a, b, fa, fm, fb, whole, eps, 0);
}

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double rel_tol)
{
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("solve_bracketed: no sign change on bracket");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) { lo = x; flo = fx; }
        else { hi = x; }
        double d = df(x);
        double step = (d != 0.0) ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi))
            xn = 0.5 * (lo + hi); // Newton left the bracket
        if (std::abs(xn - x) <= rel_tol * std::abs(xn) || hi - lo <= rel_tol * std::abs(x))
            return xn;
        x = xn;
    }
    return x;
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f,
                                             double a, double b, double x_tol)
{
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return (f1 <= f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

std::pair<double, double> fit_affine(const std::vector<double>& x,
                                     const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_affine: need >= 2 paired samples");
    double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0.0)
        throw std::invalid_argument("fit_affine: degenerate abscissae");
    double slope = (n * sxy - sx * sy) / den;
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

double fit_scale(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("fit_scale: need paired samples");
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_scale: zero basis");
    return sxy / sxx;
}

} // namespace orbspeed
