#pragma once

// Surrogate accuracy against the solver oracle. The relative error of a
// quantity x is 100 * |x_pred - x_true| / |x_true| (percent).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/inference.hpp"
#include "ftpinn/pinn/normalization.hpp"
#include "ftpinn/solver.hpp"

namespace ftpinn::bench {

struct ErrorStats {
    /// S, alpha, R_paraffin or R_olefin
    std::string quantity;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
    std::size_t count = 0;

    friend bool operator==(const ErrorStats&, const ErrorStats&) = default;
};

/// Statistics of a set of relative errors (percent). Empty input gives zeros.
ErrorStats summarize(std::string quantity, std::vector<double> errors);

/// 100 * |pred - truth| / |truth|; zero when both are zero.
double relative_error_percent(double predicted, double truth);

/// Cartesian product of {k / (points_per_axis + 1)}, k = 1..points_per_axis,
/// over the four axes; the last coordinate varies fastest.
pinn::PointBatch evaluation_grid(int points_per_axis);

/// Any map from conditions to site fractions: the surrogate, the oracle, or a
/// perturbed oracle in tests.
using SitePredictor = std::function<std::vector<double>(std::span<const kinetics::ReactionConditions>)>;

struct PointError {
    pinn::UnitPoint point{};
    double s_true = 0.0;
    double s_pred = 0.0;
    double error_percent = 0.0;
};

struct AccuracyReport {
    /// In the order S, alpha, R_paraffin, R_olefin.
    std::vector<ErrorStats> stats;
    std::size_t grid_points = 0;
    /// Grid indices where the oracle failed; excluded from every statistic.
    std::vector<std::size_t> excluded;
    std::vector<std::string> exclusion_reasons;
    /// One entry per evaluated point, in grid order.
    std::vector<PointError> points;
};

/// Solves the oracle on every grid point, asks `predictor` for S at the
/// same conditions, rebuilds the alpha profile and the rates at N_max from
/// the predicted S, and collects the four error statistics. alpha errors are
/// pooled over every carbon number and every point.
AccuracyReport accuracy_report(const SitePredictor& predictor, const kinetics::KineticParameters& params,
                               const pinn::NormalizationRanges& ranges, const pinn::PointBatch& grid,
                               const solver::SolveConfig& cfg = {}, unsigned threads = 1);

AccuracyReport accuracy_report(const pinn::Surrogate& surrogate, const kinetics::KineticParameters& params,
                               const pinn::PointBatch& grid, unsigned threads = 1);

/// A predictor that runs the oracle itself.
SitePredictor oracle_predictor(const kinetics::KineticParameters& params, const solver::SolveConfig& cfg = {},
                               unsigned threads = 1);

}  // namespace ftpinn::bench
