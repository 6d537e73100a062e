#pragma once

// Self-consistency loss of the site balance and its exact gradient.
//
// For each point the network predicts S_pred = 10^(-Sbar). Substituting
// S_pred into the chain-growth probabilities and the site balance gives
// S_act = 1 / (c0 + cS * G(S_pred)). The loss is mean |S_pred - S_act|.
//
// The gradient flows through both occurrences of S_pred. dG/dS is carried
// forward alongside the cumulative product (a single scalar tangent), which
// needs no division by alpha and stays finite when alphas vanish.

#include <cstddef>
#include <span>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/mlp.hpp"
#include "ftpinn/pinn/normalization.hpp"

namespace ftpinn::pinn {

/// Per-point constants of the site balance that do not depend on S,
/// stored column-wise for a whole batch.
class KineticsBatch {
  public:
    KineticsBatch() = default;

    /// Denormalizes every column of `points` and evaluates the Arrhenius
    /// constants and site coefficients there.
    static KineticsBatch prepare(const kinetics::KineticParameters& params, const PointBatch& points,
                                 const NormalizationRanges& ranges);

    KineticsBatch gather(std::span<const std::size_t> indices) const;

    std::size_t size() const { return c0_.size(); }
    int max_carbon_number() const { return max_carbon_number_; }

    /// S_act at site fraction S for point i; when `slope` is non-null it
    /// receives dS_act/dS.
    template <typename T>
    T site_response(std::size_t i, T site_fraction, T* slope) const;

  private:
    int max_carbon_number_ = 0;
    std::vector<double> c0_;
    std::vector<double> cS_;
    std::vector<double> alpha_one_;
    std::vector<double> growth_;        // k3 K1 p_CO
    std::vector<double> termination_;   // k7 sqrt(K2 p_H2)
    std::vector<double> ethylene_;      // k8E
    std::vector<double> olefin_;        // k80
    std::vector<double> decay_step_;    // exp(c)
};

struct LossGradient {
    double loss = 0.0;
    Network<double> gradients;
};

/// Loss, optional gradient and optional per-point |S_pred - S_act| for a
/// network in precision T. Per-point work may fan out over `threads`; the
/// reductions run in a fixed order, so results do not depend on it.
template <typename T>
double evaluate_physics_loss(const Network<T>& net, const Matrix<T>& inputs, const KineticsBatch& kinetics,
                             Network<T>* gradients, std::vector<double>* point_residuals,
                             unsigned threads = 1);

double physics_loss(const MlpModel& model, const PointBatch& batch, const kinetics::KineticParameters& params);

LossGradient loss_gradients(const MlpModel& model, const PointBatch& batch,
                            const kinetics::KineticParameters& params);

/// |S_pred - S_act| per column.
std::vector<double> point_residuals(const MlpModel& model, const PointBatch& batch,
                                    const kinetics::KineticParameters& params);

}  // namespace ftpinn::pinn
