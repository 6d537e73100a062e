#include "ftpinn/pinn/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "ftpinn/errors.hpp"

namespace ftpinn::pinn {

double open_unit(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

PointBatch uniform_points(std::size_t count, Rng& rng) {
    PointBatch points(4, static_cast<Eigen::Index>(count));
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        for (Eigen::Index k = 0; k < 4; ++k) {
            points(k, j) = open_unit(rng);
        }
    }
    return points;
}

void refresh_pool(SamplePool& pool, std::size_t size, Rng& rng) {
    pool.points = uniform_points(size, rng);
    pool.residuals.clear();
}

std::vector<double> sampling_weights(const std::vector<double>& residuals) {
    if (residuals.empty()) {
        throw DomainError("cannot sample from an empty pool");
    }
    const double total = std::accumulate(residuals.begin(), residuals.end(), 0.0);
    const auto n = static_cast<double>(residuals.size());
    std::vector<double> weights(residuals.size());
    if (!(total > 0.0) || !std::isfinite(total)) {
        std::fill(weights.begin(), weights.end(), 1.0 / n);
        return weights;
    }
    const double floor = kResidualFloorFraction * total / n;
    const double norm = total + floor * n;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        weights[i] = (residuals[i] + floor) / norm;
    }
    return weights;
}

std::vector<std::size_t> draw_indices(const std::vector<double>& weights, std::size_t count, Rng& rng) {
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    const double total = cumulative.back();
    std::vector<std::size_t> out(count);
    for (auto& index : out) {
        const double target = open_unit(rng) * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        index = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), weights.size() - 1);
    }
    return out;
}

template <typename T>
DrawnBatch resample_with(SamplePool& pool, const Network<T>& net, const kinetics::KineticParameters& params,
                         const NormalizationRanges& ranges, std::size_t batch_size, Rng& rng, unsigned threads) {
    const auto pool_size = static_cast<std::size_t>(pool.points.cols());
    if (pool_size == 0) {
        throw DomainError("resample_pool: the pool is empty");
    }
    const auto pool_kinetics = KineticsBatch::prepare(params, pool.points, ranges);
    const Matrix<T> inputs = pool.points.template cast<T>();
    evaluate_physics_loss<T>(net, inputs, pool_kinetics, nullptr, &pool.residuals, threads);

    DrawnBatch out;
    out.pool_indices = draw_indices(sampling_weights(pool.residuals), batch_size, rng);
    out.points.resize(4, static_cast<Eigen::Index>(batch_size));
    for (std::size_t k = 0; k < batch_size; ++k) {
        out.points.col(static_cast<Eigen::Index>(k)) =
            pool.points.col(static_cast<Eigen::Index>(out.pool_indices[k]));
    }
    out.kinetics = pool_kinetics.gather(out.pool_indices);
    refresh_pool(pool, pool_size, rng);
    return out;
}

template DrawnBatch resample_with<float>(SamplePool&, const Network<float>&, const kinetics::KineticParameters&,
                                         const NormalizationRanges&, std::size_t, Rng&, unsigned);
template DrawnBatch resample_with<double>(SamplePool&, const Network<double>&,
                                          const kinetics::KineticParameters&, const NormalizationRanges&,
                                          std::size_t, Rng&, unsigned);

PointBatch resample_pool(SamplePool& pool, const MlpModel& model, const kinetics::KineticParameters& params,
                         std::size_t batch_size, Rng& rng) {
    if (model.precision == Precision::Single) {
        return resample_with<float>(pool, model.network.cast<float>(), params, model.ranges, batch_size, rng)
            .points;
    }
    return resample_with<double>(pool, model.network, params, model.ranges, batch_size, rng).points;
}

}  // namespace ftpinn::pinn
