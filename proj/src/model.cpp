#include "evohj/model.hpp"

#include <cmath>
#include <string>

namespace evohj {

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(r1) || !finite(r2) || !finite(g1) || !finite(g2) ||
        !finite(theta) || !finite(kappa1) || !finite(kappa2) || !finite(m1) ||
        !finite(m2) || !finite(epsilon))
        throw InvalidParams("model parameters must be finite");
    if (!(g1 > 0.0) || !(g2 > 0.0))
        throw InvalidParams("selection strengths g1, g2 must be positive");
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0))
        throw InvalidParams("competition intensities kappa1, kappa2 must be positive");
    if (!(epsilon > 0.0))
        throw InvalidParams("mutation scale epsilon must be positive");
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw InvalidParams("migration rates m1, m2 must be positive in both directions");
    if (!(std::max(r1 - m1, r2 - m2) > 0.0))
        throw InvalidParams(
            "max(r1 - m1, r2 - m2) must be positive, otherwise the population goes extinct");
}

void PopulationSizes::validate() const {
    if (!std::isfinite(N1) || !std::isfinite(N2))
        throw InvalidParams("population sizes must be finite");
    if (N1 < 0.0 || N2 < 0.0)
        throw InvalidParams("population sizes must be nonnegative");
    if (N1 == 0.0 && N2 == 0.0)
        throw InvalidParams("population sizes must not both be zero");
}

namespace {

double habitat_optimum(int habitat, const ModelParams& p) {
    if (habitat == 1) return -p.theta;
    if (habitat == 2) return p.theta;
    throw InvalidParams("invalid habitat index " + std::to_string(habitat) +
                        " (must be 1 or 2)");
}

} // namespace

double growth_rate(int habitat, double z, double N, const ModelParams& p) {
    const double opt = habitat_optimum(habitat, p);
    const double g = habitat == 1 ? p.g1 : p.g2;
    const double r = habitat == 1 ? p.r1 : p.r2;
    const double kappa = habitat == 1 ? p.kappa1 : p.kappa2;
    const double dz = z - opt;
    return r - g * dz * dz - kappa * N;
}

Jet growth_rate_jet(int habitat, double z, double N, const ModelParams& p) {
    const double opt = habitat_optimum(habitat, p);
    const double g = habitat == 1 ? p.g1 : p.g2;
    Jet j;
    j.coeff(0) = growth_rate(habitat, z, N, p);
    j.coeff(1) = -2.0 * g * (z - opt);
    j.coeff(2) = -g;
    return j;
}

double effective_fitness(double z, const PopulationSizes& N, const ModelParams& p) {
    const double a = growth_rate(1, z, N.N1, p) - p.m1;
    const double d = growth_rate(2, z, N.N2, p) - p.m2;
    const double mean = 0.5 * (a + d);
    const double half_gap = 0.5 * (a - d);
    return mean + std::sqrt(half_gap * half_gap + p.m1 * p.m2);
}

Jet effective_fitness_jet(double z, const PopulationSizes& N, const ModelParams& p) {
    const Jet a = growth_rate_jet(1, z, N.N1, p) - p.m1;
    const Jet d = growth_rate_jet(2, z, N.N2, p) - p.m2;
    const Jet mean = 0.5 * (a + d);
    const Jet half_gap = 0.5 * (a - d);
    return mean + sqrt(half_gap * half_gap + p.m1 * p.m2);
}

std::array<double, 2> fitness_eigenvector(double z, const PopulationSizes& N,
                                          const ModelParams& p) {
    const double a = growth_rate(1, z, N.N1, p) - p.m1;
    const double d = growth_rate(2, z, N.N2, p) - p.m2;
    const double half_gap = 0.5 * (a - d);
    const double root = std::sqrt(half_gap * half_gap + p.m1 * p.m2);
    // W - a = root - half_gap, rewritten to avoid cancellation when the
    // half gap dominates the migration product.
    const double ratio = p.m1 / (root + half_gap);
    const double alpha1 = 1.0 / (1.0 + ratio);
    return {alpha1, ratio * alpha1};
}

} // namespace evohj
