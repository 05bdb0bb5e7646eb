#include "evohj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace evohj {

bool solve_dense(std::span<double> a, std::span<double> b, int n) {
    const auto idx = [n](int i, int j) {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j);
    };
    double scale = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) scale = std::max(scale, std::fabs(a[k]));
    if (scale == 0.0) return false;
    const double tiny = 1e-13 * scale;

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[idx(r, col)]) > std::fabs(a[idx(piv, col)])) piv = r;
        if (std::fabs(a[idx(piv, col)]) < tiny) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a[idx(piv, j)], a[idx(col, j)]);
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
        }
        const double d = a[idx(col, col)];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[idx(r, col)] / d;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a[idx(r, j)] -= f * a[idx(col, j)];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < n; ++j)
            acc -= a[idx(r, j)] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(r)] = acc / a[idx(r, r)];
    }
    return true;
}

double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double f_lo, double f_hi, double xtol,
                           int max_iter) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
        // secant proposal, clipped into the open bracket
        double mid = 0.5 * (lo + hi);
        if (f_hi != f_lo) {
            const double sec = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (sec > lo + 0.1 * (hi - lo) && sec < hi - 0.1 * (hi - lo)) mid = sec;
        }
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    LineFit out;
    if (n < 2) return out;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (n > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (out.intercept + out.slope * x[i]);
            ss += r * r;
        }
        out.slope_stderr = std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx);
    }
    return out;
}

} // namespace evohj
