#include "evohj/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "evohj/errors.hpp"

namespace evohj {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, const QuadOptions& opts) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth >= opts.max_depth)
        throw QuadratureFailure("adaptive Simpson exceeded subdivision depth");
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opts) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opts);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadOptions& opts) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return sign * adapt(f, a, b, fa, fm, fb, whole, opts.abs_tol, 0, opts);
}

double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadOptions& opts) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += adaptive_simpson(f, cuts[i], cuts[i + 1], opts);
    return sign * total;
}

} // namespace evohj
