#pragma once

#include <functional>
#include <span>
#include <vector>

namespace evohj {

/// Solves the dense n x n system A x = b in place (row-major A) by Gaussian
/// elimination with partial pivoting.  Returns false when a pivot falls
/// below the relative singularity threshold.  Intended for the small
/// systems of this library (n <= 8).
bool solve_dense(std::span<double> a, std::span<double> b, int n);

/// Root of f on a bracketing interval [lo, hi] with f(lo) * f(hi) <= 0.
/// Secant steps guarded by bisection; converges to |hi - lo| <= xtol.
double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double f_lo, double f_hi,
                           double xtol = 1e-14, int max_iter = 200);

/// Least-squares straight line through (x, y).
struct LineFit {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0; ///< standard error of the slope estimate
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace evohj
