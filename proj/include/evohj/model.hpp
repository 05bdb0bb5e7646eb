#pragma once

#include <array>

#include "evohj/errors.hpp"
#include "evohj/jet.hpp"

namespace evohj {

/// Model parameters of the two-habitat trait-structured population.
///
/// Habitat optima sit at -theta (habitat 1) and +theta (habitat 2).
/// Growth in habitat i is r_i - g_i (z - theta_i)^2 - kappa_i N_i, and the
/// habitats exchange migrants at rates m_1 (1 -> 2) and m_2 (2 -> 1).
/// epsilon is the mutation scale; it is consumed only by the modules that
/// expand or solve in epsilon.
struct ModelParams {
    double r1 = 0, r2 = 0;
    double g1 = 0, g2 = 0;
    double theta = 0;
    double kappa1 = 0, kappa2 = 0;
    double m1 = 0, m2 = 0;
    double epsilon = 0;

    /// Throws InvalidParams unless all structural assumptions hold:
    /// g_i, kappa_i, epsilon > 0; m_i > 0; max(r1 - m1, r2 - m2) > 0.
    void validate() const;
};

/// Total population sizes per habitat.
struct PopulationSizes {
    double N1 = 0, N2 = 0;

    void validate() const;
};

/// Per-habitat growth rate r_i - g_i (z - theta_i)^2 - kappa_i N.
double growth_rate(int habitat, double z, double N, const ModelParams& p);

/// Degree-4 z-jet of growth_rate at z (a quadratic, so coeffs 3,4 vanish).
Jet growth_rate_jet(int habitat, double z, double N, const ModelParams& p);

/// Effective fitness W(z; N1, N2): the largest eigenvalue of
///   [[R1 - m1, m2], [m1, R2 - m2]],
/// computed in closed form as mean + sqrt(half_gap^2 + m1 m2).  The
/// discriminant is strictly positive because m1 m2 > 0, so the largest
/// eigenvalue is always simple.
double effective_fitness(double z, const PopulationSizes& N, const ModelParams& p);

/// Degree-4 z-jet of the effective fitness at z (exact derivatives).
Jet effective_fitness_jet(double z, const PopulationSizes& N, const ModelParams& p);

/// Right eigenvector of the fitness matrix for its largest eigenvalue,
/// normalized to sum 1.  Both components are strictly positive.
std::array<double, 2> fitness_eigenvector(double z, const PopulationSizes& N,
                                          const ModelParams& p);

} // namespace evohj
