#pragma once

#include <functional>
#include <span>

namespace evohj {

struct QuadOptions {
    double abs_tol = 1e-12;
    int max_depth = 60;
};

/// Adaptive Simpson integration of f over [a, b] to the given absolute
/// tolerance.  Throws QuadratureFailure when the subdivision depth budget
/// is exhausted before the local tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadOptions& opts = {});

/// Integrates f over [a, b] splitting the interval at every breakpoint that
/// falls strictly inside, so integrand kinks can be placed on panel
/// boundaries.  Breakpoints need not be sorted.
double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadOptions& opts = {});

} // namespace evohj
