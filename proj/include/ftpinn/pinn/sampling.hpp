#pragma once

// Residual-proportional resampling of training points.
//
// Each epoch a pool of fresh uniform points is scored under the current
// model; the training batch is drawn from it with replacement, with
// probability proportional to residual + floor, floor = 1e-3 * mean residual.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/mlp.hpp"
#include "ftpinn/pinn/normalization.hpp"
#include "ftpinn/pinn/physics_loss.hpp"

namespace ftpinn::pinn {

using Rng = std::mt19937_64;

inline constexpr double kResidualFloorFraction = 1e-3;

/// Uniform in the open interval (0, 1); never returns an endpoint, so
/// sampled pressures are strictly positive.
double open_unit(Rng& rng);

/// `count` points uniform in (0,1)^4.
PointBatch uniform_points(std::size_t count, Rng& rng);

struct SamplePool {
    PointBatch points;
    /// |S_pred - S_act| per point under the model that last scored the pool.
    std::vector<double> residuals;
};

/// Replaces the pool contents with `size` fresh uniform points and clears the
/// residuals.
void refresh_pool(SamplePool& pool, std::size_t size, Rng& rng);

/// Normalized draw probabilities for the given residuals. All-zero residuals
/// give the uniform distribution.
std::vector<double> sampling_weights(const std::vector<double>& residuals);

/// Indices drawn with replacement according to `weights` (which need not be
/// normalized).
std::vector<std::size_t> draw_indices(const std::vector<double>& weights, std::size_t count, Rng& rng);

/// A drawn training batch together with its site-balance constants.
struct DrawnBatch {
    PointBatch points;
    KineticsBatch kinetics;
    std::vector<std::size_t> pool_indices;
};

/// Typed core of resample_pool: scores the pool with `net`, draws the batch,
/// refreshes the pool. The constants of drawn points are gathered from the
/// pool rather than recomputed.
template <typename T>
DrawnBatch resample_with(SamplePool& pool, const Network<T>& net, const kinetics::KineticParameters& params,
                         const NormalizationRanges& ranges, std::size_t batch_size, Rng& rng,
                         unsigned threads = 1);

/// Scores the pool under `model`, draws `batch_size` points from it, then
/// refreshes the pool with fresh uniform points of the same size.
PointBatch resample_pool(SamplePool& pool, const MlpModel& model, const kinetics::KineticParameters& params,
                         std::size_t batch_size, Rng& rng);

}  // namespace ftpinn::pinn
