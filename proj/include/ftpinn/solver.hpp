#pragma once

// Conventional solution of the site balance: a bracketed Brent-Dekker root
// search (bisection safeguarded secant / inverse quadratic interpolation) on
// residual(S) = rhs(S) - S over [bracket_floor, 1/c0].

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftpinn/kinetics.hpp"

namespace ftpinn::solver {

struct SolveConfig {
    double abs_tol = 1e-12;
    int max_iter = 200;
    double bracket_floor = 1e-16;
    /// Also require |residual| <= rel_tol * S. The residual slope is at most
    /// -1, so this bounds the relative error of S by rel_tol; it matters when
    /// S is small and abs_tol alone would be loose.
    double rel_tol = 1e-12;

    void validate() const;
};

/// Root of the site balance without the chain-growth profile.
struct SiteFractionRoot {
    double site_fraction = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct SiteBalanceSolution {
    double site_fraction = 0.0;
    double residual = 0.0;
    int iterations = 0;
    kinetics::ChainGrowthProfile profile;
};

/// Throws BracketError when residual(floor) <= 0 or residual(1/c0) > 0 and
/// ConvergenceError (carrying the best iterate) when max_iter is exhausted.
/// With p_CO = 0 the chain sum vanishes and S = 1/c0 is returned directly.
SiteFractionRoot solve_site_fraction(const kinetics::SiteBalance& balance, const SolveConfig& cfg);

SiteBalanceSolution solve_site_balance(const kinetics::RateConstants& rc,
                                       const kinetics::ReactionConditions& cond, const SolveConfig& cfg);

SiteBalanceSolution solve_site_balance(const kinetics::KineticParameters& params,
                                       const kinetics::ReactionConditions& cond, const SolveConfig& cfg);

/// Outcome of one point of a batch; `solution` is empty when the point failed.
struct PointOutcome {
    std::optional<SiteBalanceSolution> solution;
    std::string error;
};

struct BatchResult {
    std::vector<PointOutcome> points;

    std::vector<std::size_t> failed_indices() const;
    bool all_succeeded() const { return failed_indices().empty(); }
};

/// Solves every point independently. Output order matches input order and
/// does not depend on `threads`. Failures are recorded per point.
BatchResult solve_batch(const kinetics::KineticParameters& params,
                        std::span<const kinetics::ReactionConditions> conditions, const SolveConfig& cfg,
                        unsigned threads = 1);

}  // namespace ftpinn::solver
