#pragma once

#include <array>
#include <vector>

#include "evohj/model.hpp"

namespace evohj {

enum class MorphType { monomorphic, dimorphic };

/// Candidate trait support: one or two strictly ordered trait values.
struct SupportSet {
    std::vector<double> points;

    void validate() const;
};

/// Point-mass equilibrium on a support set.  weights[j] holds the habitat
/// masses (alpha_1j, alpha_2j) carried by support point j; sizes are the
/// per-habitat totals.
struct DemographicEquilibrium {
    SupportSet support;
    std::vector<std::array<double, 2>> weights;
    PopulationSizes sizes;
};

struct EssResult {
    DemographicEquilibrium equilibrium;
    MorphType morph = MorphType::monomorphic;
    /// max of W over the verification grid away from the support
    double max_excess = 0;
};

struct ZeroLevelReport {
    double max_excess = 0;
    /// true when W comes near zero only inside support neighborhoods
    bool zero_only_on_support = true;
    double worst_z = 0; ///< grid point attaining max_excess
};

struct EssOptions {
    int scan_points = 201;      ///< monomorphic candidate scan resolution
    double scan_jitter = 0.0;   ///< interior scan offset in units of spacing, [0,1)
    int verify_points = 2001;   ///< global nonpositivity grid
    double tol_eq = 1e-10;      ///< equilibrium residual tolerance
    double tol_ess = 1e-8;      ///< global nonpositivity slack
    double exclude_radius = 1e-3; ///< verification neighborhood around support
    double zero_tol = 1e-6;     ///< "W touches zero" threshold for locality check
    int max_iter = 200;         ///< Newton iteration budget
};

/// Trait interval [-theta - delta, theta + delta] outside of which W < 0
/// for any admissible population sizes.
std::array<double, 2> candidate_bracket(const ModelParams& p);

/// Solves the equilibrium conditions on the given support for strictly
/// positive weights: W = 0 at every support point with weights aligned to
/// the Perron eigenvector.  Damped Newton on the bilinear system.
DemographicEquilibrium demographic_equilibrium(const SupportSet& support,
                                               const ModelParams& p,
                                               const EssOptions& opts = {});

/// Grid check of W(z, N1*, N2*) <= 0 away from the support, plus the
/// zero-level-set locality check (W reaches zero only on the support).
ZeroLevelReport verify_zero_level_set(const DemographicEquilibrium& eq,
                                      const ModelParams& p,
                                      const EssOptions& opts = {});
ZeroLevelReport verify_zero_level_set(const EssResult& ess, const ModelParams& p,
                                      const EssOptions& opts = {});

/// Locates the unique evolutionarily stable strategy: scans monomorphic
/// candidates along the equilibrium branch, verifies global nonpositivity,
/// and falls back to a two-point support search when every monomorphic
/// candidate is invadable.
EssResult find_ess(const ModelParams& p, const EssOptions& opts = {});

} // namespace evohj
