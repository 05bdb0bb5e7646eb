#include "evohj/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "evohj/numerics.hpp"

namespace evohj {

void SupportSet::validate() const {
    if (points.empty() || points.size() > 2)
        throw InvalidParams("support must hold one or two trait values");
    for (double z : points)
        if (!std::isfinite(z)) throw InvalidParams("support points must be finite");
    if (points.size() == 2 && !(points[0] < points[1]))
        throw InvalidParams("two-point support must be strictly ordered");
}

std::array<double, 2> candidate_bracket(const ModelParams& p) {
    const double delta =
        p.theta + std::sqrt(std::max(p.r1, p.r2) / std::min(p.g1, p.g2));
    return {-p.theta - delta, p.theta + delta};
}

namespace {

double single_habitat_guess(int habitat, double z, const ModelParams& p) {
    const double r0 = growth_rate(habitat, z, 0.0, p);
    const double kappa = habitat == 1 ? p.kappa1 : p.kappa2;
    const double floor = 1e-3 * std::max(p.r1, p.r2) / std::min(p.kappa1, p.kappa2);
    return std::max(r0 / kappa, floor);
}

// Equilibrium conditions for the one-point support {z}: the size vector
// (N1, N2) must be a kernel vector of the fitness matrix, i.e.
//   (R1 - m1) N1 + m2 N2 = 0,   m1 N1 + (R2 - m2) N2 = 0.
// Positivity of the solution makes 0 the Perron eigenvalue automatically.
struct MonoSystem {
    const ModelParams& p;
    double z;

    std::array<double, 2> residual(double N1, double N2) const {
        return {(growth_rate(1, z, N1, p) - p.m1) * N1 + p.m2 * N2,
                p.m1 * N1 + (growth_rate(2, z, N2, p) - p.m2) * N2};
    }
    double norm(double N1, double N2) const {
        const auto f = residual(N1, N2);
        return std::max(std::fabs(f[0]), std::fabs(f[1]));
    }
};

std::optional<std::array<double, 2>> mono_newton(const MonoSystem& sys,
                                                 std::array<double, 2> x,
                                                 int max_iter, double ftol) {
    for (int it = 0; it < max_iter; ++it) {
        const auto f = sys.residual(x[0], x[1]);
        const double fn = std::max(std::fabs(f[0]), std::fabs(f[1]));
        if (fn <= ftol) return x;
        double jac[4] = {
            growth_rate(1, sys.z, x[0], sys.p) - sys.p.m1 - sys.p.kappa1 * x[0],
            sys.p.m2, sys.p.m1,
            growth_rate(2, sys.z, x[1], sys.p) - sys.p.m2 - sys.p.kappa2 * x[1]};
        double rhs[2] = {-f[0], -f[1]};
        if (!solve_dense(jac, rhs, 2)) return std::nullopt;
        double lambda = 1.0;
        while (lambda > 1e-10) {
            const double n1 = x[0] + lambda * rhs[0];
            const double n2 = x[1] + lambda * rhs[1];
            if (n1 > 0.0 && n2 > 0.0 && sys.norm(n1, n2) < fn) break;
            lambda *= 0.5;
        }
        x[0] += lambda * rhs[0];
        x[1] += lambda * rhs[1];
        if (!(x[0] > 0.0) || !(x[1] > 0.0)) return std::nullopt;
    }
    return std::nullopt;
}

DemographicEquilibrium mono_equilibrium(double z, const ModelParams& p,
                                        const EssOptions& opts) {
    if (effective_fitness(z, {0.0, 0.0}, p) <= 0.0)
        throw NoPositiveEquilibrium("trait is not viable: W(z, 0, 0) <= 0");
    const MonoSystem sys{p, z};
    const double s1 = single_habitat_guess(1, z, p);
    const double s2 = single_habitat_guess(2, z, p);
    const double scale =
        std::max({1.0, s1, s2}) * (std::fabs(p.r1) + std::fabs(p.r2) + p.m1 + p.m2);
    const double ftol = 1e-14 * scale;
    const std::array<std::array<double, 2>, 4> seeds{{
        {s1, s2},
        {s1, 0.1 * s1},
        {0.1 * s2, s2},
        {0.5 * (s1 + s2), 0.5 * (s1 + s2)},
    }};
    for (const auto& seed : seeds) {
        if (auto x = mono_newton(sys, seed, opts.max_iter, ftol)) {
            if (!((*x)[0] > 0.0 && (*x)[1] > 0.0))
                throw NoPositiveEquilibrium("equilibrium weights not positive");
            DemographicEquilibrium eq;
            eq.support.points = {z};
            eq.weights = {{(*x)[0], (*x)[1]}};
            eq.sizes = {(*x)[0], (*x)[1]};
            return eq;
        }
    }
    throw NonConvergence("monomorphic equilibrium Newton failed to converge");
}

// Two-point support: unknowns are the four point masses alpha_{i,j}; each
// point contributes the two kernel conditions of its fitness matrix, with
// sizes N_i = sum_j alpha_{i,j} feeding back through the growth rates.
struct DiSystem {
    const ModelParams& p;
    double za, zb;

    std::array<double, 4> residual(const std::array<double, 4>& x) const {
        const double N1 = x[0] + x[2];
        const double N2 = x[1] + x[3];
        return {(growth_rate(1, za, N1, p) - p.m1) * x[0] + p.m2 * x[1],
                p.m1 * x[0] + (growth_rate(2, za, N2, p) - p.m2) * x[1],
                (growth_rate(1, zb, N1, p) - p.m1) * x[2] + p.m2 * x[3],
                p.m1 * x[2] + (growth_rate(2, zb, N2, p) - p.m2) * x[3]};
    }
    double norm(const std::array<double, 4>& x) const {
        const auto f = residual(x);
        double m = 0;
        for (double v : f) m = std::max(m, std::fabs(v));
        return m;
    }
};

std::optional<std::array<double, 4>> di_newton(const DiSystem& sys,
                                               std::array<double, 4> x,
                                               int max_iter, double ftol) {
    for (int it = 0; it < max_iter; ++it) {
        const auto f = sys.residual(x);
        double fn = 0;
        for (double v : f) fn = std::max(fn, std::fabs(v));
        if (fn <= ftol) return x;
        const double N1 = x[0] + x[2];
        const double N2 = x[1] + x[3];
        const double r1a = growth_rate(1, sys.za, N1, sys.p) - sys.p.m1;
        const double r2a = growth_rate(2, sys.za, N2, sys.p) - sys.p.m2;
        const double r1b = growth_rate(1, sys.zb, N1, sys.p) - sys.p.m1;
        const double r2b = growth_rate(2, sys.zb, N2, sys.p) - sys.p.m2;
        const double k1 = sys.p.kappa1, k2 = sys.p.kappa2;
        double jac[16] = {
            r1a - k1 * x[0], sys.p.m2,        -k1 * x[0],      0,
            sys.p.m1,        r2a - k2 * x[1], 0,               -k2 * x[1],
            -k1 * x[2],      0,               r1b - k1 * x[2], sys.p.m2,
            0,               -k2 * x[3],      sys.p.m1,        r2b - k2 * x[3]};
        double rhs[4] = {-f[0], -f[1], -f[2], -f[3]};
        if (!solve_dense(jac, rhs, 4)) return std::nullopt;
        double lambda = 1.0;
        while (lambda > 1e-10) {
            std::array<double, 4> xn;
            bool pos = true;
            for (int i = 0; i < 4; ++i) {
                xn[static_cast<std::size_t>(i)] =
                    x[static_cast<std::size_t>(i)] + lambda * rhs[i];
                pos = pos && xn[static_cast<std::size_t>(i)] > 0.0;
            }
            if (pos && sys.norm(xn) < fn) break;
            lambda *= 0.5;
        }
        for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] += lambda * rhs[i];
        for (double v : x)
            if (!(v > 0.0)) return std::nullopt;
    }
    return std::nullopt;
}

DemographicEquilibrium di_equilibrium(double za, double zb, const ModelParams& p,
                                      const EssOptions& opts,
                                      const std::array<double, 4>* warm = nullptr) {
    const DiSystem sys{p, za, zb};
    const double s1a = single_habitat_guess(1, za, p);
    const double s2a = single_habitat_guess(2, za, p);
    const double s1b = single_habitat_guess(1, zb, p);
    const double s2b = single_habitat_guess(2, zb, p);
    const double scale = std::max({1.0, s1a, s2a, s1b, s2b}) *
                         (std::fabs(p.r1) + std::fabs(p.r2) + p.m1 + p.m2);
    const double ftol = 1e-14 * scale;
    std::vector<std::array<double, 4>> seeds;
    if (warm) seeds.push_back(*warm);
    seeds.push_back({0.5 * s1a, 0.5 * s2a, 0.5 * s1b, 0.5 * s2b});
    seeds.push_back({s1a, 0.25 * s2a, 0.25 * s1b, s2b});
    seeds.push_back({0.25 * s1a, s2a, s1b, 0.25 * s2b});
    for (const auto& seed : seeds) {
        if (auto x = di_newton(sys, seed, opts.max_iter, ftol)) {
            DemographicEquilibrium eq;
            eq.support.points = {za, zb};
            eq.weights = {{(*x)[0], (*x)[1]}, {(*x)[2], (*x)[3]}};
            eq.sizes = {(*x)[0] + (*x)[2], (*x)[1] + (*x)[3]};
            return eq;
        }
    }
    throw NonConvergence("dimorphic equilibrium Newton failed to converge");
}

/// dW/dz at z along the monomorphic equilibrium branch.
double selection_gradient(double z, const ModelParams& p, const EssOptions& opts) {
    const auto eq = mono_equilibrium(z, p, opts);
    return effective_fitness_jet(z, eq.sizes, p).coeff(1);
}

} // namespace

DemographicEquilibrium demographic_equilibrium(const SupportSet& support,
                                               const ModelParams& p,
                                               const EssOptions& opts) {
    p.validate();
    support.validate();
    if (support.points.size() == 1) return mono_equilibrium(support.points[0], p, opts);
    return di_equilibrium(support.points[0], support.points[1], p, opts);
}

ZeroLevelReport verify_zero_level_set(const DemographicEquilibrium& eq,
                                      const ModelParams& p, const EssOptions& opts) {
    const auto [lo, hi] = candidate_bracket(p);
    const int n = std::max(opts.verify_points, 3);
    const double h = (hi - lo) / (n - 1);

    // Radius inside which W is allowed to approach zero around a support
    // point, from the local curvature: |W| < zero_tol within
    // sqrt(zero_tol / a2) of a simple quadratic zero.
    std::vector<double> zero_radius(eq.support.points.size());
    for (std::size_t j = 0; j < eq.support.points.size(); ++j) {
        const double w2 = effective_fitness_jet(eq.support.points[j], eq.sizes, p).coeff(2);
        const double a2 = std::max(std::fabs(w2), 1e-12);
        zero_radius[j] =
            std::max(opts.exclude_radius, 2.0 * std::sqrt(opts.zero_tol / a2));
    }

    ZeroLevelReport rep;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double z = lo + i * h;
        double dist = std::numeric_limits<double>::infinity();
        double rknee = 0;
        for (std::size_t j = 0; j < eq.support.points.size(); ++j) {
            const double d = std::fabs(z - eq.support.points[j]);
            if (d < dist) {
                dist = d;
                rknee = zero_radius[j];
            }
        }
        if (dist < opts.exclude_radius) continue;
        const double w = effective_fitness(z, eq.sizes, p);
        if (w > rep.max_excess) {
            rep.max_excess = w;
            rep.worst_z = z;
        }
        if (w > -opts.zero_tol && dist > rknee) rep.zero_only_on_support = false;
    }
    return rep;
}

ZeroLevelReport verify_zero_level_set(const EssResult& ess, const ModelParams& p,
                                      const EssOptions& opts) {
    return verify_zero_level_set(ess.equilibrium, p, opts);
}

namespace {

struct Candidate {
    double z;
    DemographicEquilibrium eq;
    double max_excess;
};

std::vector<double> refine_mono_candidates(const ModelParams& p,
                                           const EssOptions& opts) {
    const auto [lo, hi] = candidate_bracket(p);
    const int n = std::max(opts.scan_points, 8);
    const double h = (hi - lo) / n;
    const double off = std::clamp(opts.scan_jitter, 0.0, 0.999);

    std::vector<double> zs(static_cast<std::size_t>(n));
    std::vector<double> grad(static_cast<std::size_t>(n));
    std::vector<bool> ok(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        const double z = lo + (i + 0.5 * off) * h;
        zs[static_cast<std::size_t>(i)] = z;
        try {
            grad[static_cast<std::size_t>(i)] = selection_gradient(z, p, opts);
            ok[static_cast<std::size_t>(i)] = true;
        } catch (const Error&) {
        }
    }

    std::vector<double> cands;
    auto push = [&cands](double z) {
        for (double c : cands)
            if (std::fabs(c - z) < 1e-9) return;
        cands.push_back(z);
    };
    for (int i = 0; i + 1 < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (!ok[iu] || !ok[iu + 1]) continue;
        if (grad[iu] == 0.0) push(zs[iu]);
        if (grad[iu] * grad[iu + 1] < 0.0) {
            try {
                const double root = find_root_bracketed(
                    [&](double z) { return selection_gradient(z, p, opts); },
                    zs[iu], zs[iu + 1], grad[iu], grad[iu + 1], 1e-14);
                push(root);
            } catch (const Error&) {
            }
        }
    }
    if (!cands.empty()) return cands;
    // No interior stationary point found: fall back to the best viable scan
    // point so the dimorphic stage still gets a seed landscape.
    double best = 0, bestg = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (ok[iu] && std::fabs(grad[iu]) < bestg) {
            bestg = std::fabs(grad[iu]);
            best = zs[iu];
            any = true;
        }
    }
    if (any) cands.push_back(best);
    return cands;
}

/// Local maxima of W(., N1, N2) on the verification grid; outermost pair
/// used to seed the two-point support search.
std::optional<std::array<double, 2>> dimorphic_seeds(const DemographicEquilibrium& eq,
                                                     const ModelParams& p,
                                                     const EssOptions& opts) {
    const auto [lo, hi] = candidate_bracket(p);
    const int n = std::max(opts.verify_points, 64);
    const double h = (hi - lo) / (n - 1);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = effective_fitness(lo + i * h, eq.sizes, p);
    std::vector<double> maxima;
    for (int i = 1; i + 1 < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (w[iu] >= w[iu - 1] && w[iu] >= w[iu + 1]) maxima.push_back(lo + i * h);
    }
    if (maxima.size() < 2) return std::nullopt;
    return std::array<double, 2>{maxima.front(), maxima.back()};
}

std::optional<EssResult> solve_dimorphic(const ModelParams& p, const EssOptions& opts,
                                         std::array<double, 2> seed,
                                         const DemographicEquilibrium& mono_eq_seed) {
    const auto [lo, hi] = candidate_bracket(p);
    double za = seed[0], zb = seed[1];
    std::array<double, 4> warm = {0.5 * mono_eq_seed.sizes.N1, 0.5 * mono_eq_seed.sizes.N2,
                                  0.5 * mono_eq_seed.sizes.N1, 0.5 * mono_eq_seed.sizes.N2};

    auto tangency = [&](double a, double b,
                        std::array<double, 4>& w) -> std::array<double, 2> {
        const auto eq = di_equilibrium(a, b, p, opts, &w);
        w = {eq.weights[0][0], eq.weights[0][1], eq.weights[1][0], eq.weights[1][1]};
        return {effective_fitness_jet(a, eq.sizes, p).coeff(1),
                effective_fitness_jet(b, eq.sizes, p).coeff(1)};
    };

    const double gtol = 1e-12 * std::max(1.0, std::max(p.g1, p.g2) *
                                                  (std::fabs(hi) + std::fabs(lo)));
    try {
        for (int it = 0; it < opts.max_iter; ++it) {
            auto w0 = warm;
            const auto g0 = tangency(za, zb, w0);
            warm = w0;
            if (std::max(std::fabs(g0[0]), std::fabs(g0[1])) <= gtol) break;

            const double fd = 1e-7 * std::max(1.0, zb - za);
            auto wa = warm;
            const auto ga = tangency(za + fd, zb, wa);
            auto wb = warm;
            const auto gb = tangency(za, zb + fd, wb);
            double jac[4] = {(ga[0] - g0[0]) / fd, (gb[0] - g0[0]) / fd,
                             (ga[1] - g0[1]) / fd, (gb[1] - g0[1]) / fd};
            double rhs[2] = {-g0[0], -g0[1]};
            if (!solve_dense(jac, rhs, 2)) return std::nullopt;
            // keep the two points ordered and inside the bracket
            const double cap = 0.25 * std::max(zb - za, 1e-3);
            rhs[0] = std::clamp(rhs[0], -cap, cap);
            rhs[1] = std::clamp(rhs[1], -cap, cap);
            za = std::clamp(za + rhs[0], lo, hi);
            zb = std::clamp(zb + rhs[1], lo, hi);
            if (!(za < zb)) return std::nullopt;
        }
        auto wfin = warm;
        const auto gfin = tangency(za, zb, wfin);
        if (std::max(std::fabs(gfin[0]), std::fabs(gfin[1])) > 1e3 * gtol)
            return std::nullopt;
        const auto eq = di_equilibrium(za, zb, p, opts, &wfin);
        const auto rep = verify_zero_level_set(eq, p, opts);
        if (rep.max_excess > opts.tol_ess) return std::nullopt;
        return EssResult{eq, MorphType::dimorphic, rep.max_excess};
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

EssResult find_ess(const ModelParams& p, const EssOptions& opts) {
    p.validate();
    std::vector<Candidate> failed;
    std::optional<EssResult> best_mono;
    for (double z : refine_mono_candidates(p, opts)) {
        try {
            auto eq = mono_equilibrium(z, p, opts);
            const auto rep = verify_zero_level_set(eq, p, opts);
            if (rep.max_excess <= opts.tol_ess) {
                if (!best_mono || rep.max_excess < best_mono->max_excess)
                    best_mono = EssResult{std::move(eq), MorphType::monomorphic,
                                          rep.max_excess};
            } else {
                failed.push_back({z, std::move(eq), rep.max_excess});
            }
        } catch (const Error&) {
        }
    }
    if (best_mono) return *best_mono;

    std::sort(failed.begin(), failed.end(),
              [](const Candidate& a, const Candidate& b) {
                  return a.max_excess < b.max_excess;
              });
    for (const auto& cand : failed) {
        const auto seed = dimorphic_seeds(cand.eq, p, opts);
        if (!seed) continue;
        if (auto ess = solve_dimorphic(p, opts, *seed, cand.eq)) return *ess;
    }
    throw NoEssFound("no monomorphic or dimorphic support passed verification");
}

} // namespace evohj
