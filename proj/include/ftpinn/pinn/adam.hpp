#pragma once

#include <cmath>
#include <cstdint>

#include "ftpinn/pinn/mlp.hpp"

namespace ftpinn::pinn {

/// eta(t) = lr0 / (1 + decay_rate * t / decay_steps)
double inverse_time_decay(double lr0, double decay_rate, double decay_steps, std::int64_t epoch);

struct AdamHyper {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

template <typename T>
struct AdamState {
    Network<T> first_moment;
    Network<T> second_moment;
    std::int64_t steps = 0;

    static AdamState zeros_like(const Network<T>& net) {
        return {net.zeros_like(), net.zeros_like(), 0};
    }
};

/// One bias-corrected Adam update of `params` with learning rate `lr`.
template <typename T>
void adam_step(Network<T>& params, const Network<T>& gradients, AdamState<T>& state, double lr,
               const AdamHyper& hyper = {}) {
    state.steps += 1;
    const double t = static_cast<double>(state.steps);
    const T b1 = static_cast<T>(hyper.beta1);
    const T b2 = static_cast<T>(hyper.beta2);
    const T correction1 = static_cast<T>(1.0 - std::pow(hyper.beta1, t));
    const T correction2 = static_cast<T>(1.0 - std::pow(hyper.beta2, t));
    const T eta = static_cast<T>(lr);
    const T eps = static_cast<T>(hyper.epsilon);

    auto update = [&](auto& theta, const auto& g, auto& m, auto& v) {
        m = b1 * m + (T(1) - b1) * g;
        v = b2 * v + (T(1) - b2) * g.cwiseProduct(g);
        theta.array() -= eta * (m.array() / correction1) / ((v.array() / correction2).sqrt() + eps);
    };
    for (std::size_t l = 0; l < params.layer_count(); ++l) {
        update(params.weights[l], gradients.weights[l], state.first_moment.weights[l],
               state.second_moment.weights[l]);
        update(params.biases[l], gradients.biases[l], state.first_moment.biases[l], state.second_moment.biases[l]);
    }
}

}  // namespace ftpinn::pinn
