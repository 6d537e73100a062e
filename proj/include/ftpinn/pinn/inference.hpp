#pragma once

#include <span>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/dense_forward.hpp"
#include "ftpinn/pinn/mlp.hpp"
#include "ftpinn/pinn/normalization.hpp"

namespace ftpinn::pinn {

/// A model prepared for repeated inference: the weights are cast to the
/// model's precision once. Immutable after construction, so one instance may
/// serve many threads.
class Surrogate {
  public:
    explicit Surrogate(MlpModel model);

    const MlpModel& model() const noexcept { return model_; }

    /// S_pred for already normalized points.
    std::vector<double> predict(const PointBatch& batch) const;

    /// Normalizes and predicts; RangeError lists rows outside the box.
    std::vector<double> predict(std::span<const kinetics::ReactionConditions> conditions) const;

  private:
    MlpModel model_;
    std::vector<detail::PackedLayer<double>> double_;
    std::vector<detail::PackedLayer<float>> single_;
};

struct InferenceResult {
    std::vector<double> site_fraction;
    /// Filled only when rates were requested.
    std::vector<kinetics::ChainGrowthProfile> profiles;
    std::vector<kinetics::ProductRates> rates;
};

/// S_pred for every row and, when `with_rates` is set, the chain-growth
/// profile and product rates evaluated at S_pred.
InferenceResult infer_batch(const Surrogate& surrogate, std::span<const kinetics::ReactionConditions> conditions,
                            const kinetics::KineticParameters& params, bool with_rates, unsigned threads = 1);

/// Profiles and rates at given site fractions, shared by the surrogate and
/// any other predictor of S.
void attach_rates(InferenceResult& result, std::span<const kinetics::ReactionConditions> conditions,
                  const kinetics::KineticParameters& params, unsigned threads = 1);

}  // namespace ftpinn::pinn
