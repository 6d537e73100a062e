#pragma once

// Fully connected ReLU network mapping a normalized point to the log-scale
// site fraction Sbar; the head is S = 10^(-Sbar).
//
// Layer l computes x * W_l + b_l with x a row vector, so W_l has shape
// [fan_in][fan_out]. Internally a batch is stored column-wise (one point per
// column), which turns the row-vector convention into Z = W^T X.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ftpinn/pinn/normalization.hpp"

namespace ftpinn::pinn {

enum class Precision { Double, Single };

const char* to_string(Precision precision);
Precision parse_precision(const std::string& text);

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using RowVector = Eigen::Matrix<T, 1, Eigen::Dynamic>;

/// Weights and biases of every layer; also used for gradients and optimizer
/// moments, which share the shape.
template <typename T>
struct Network {
    std::vector<Matrix<T>> weights;
    std::vector<Vector<T>> biases;

    std::size_t layer_count() const { return weights.size(); }

    Network zeros_like() const {
        Network out;
        for (const auto& w : weights) {
            out.weights.push_back(Matrix<T>::Zero(w.rows(), w.cols()));
        }
        for (const auto& b : biases) {
            out.biases.push_back(Vector<T>::Zero(b.size()));
        }
        return out;
    }

    template <typename U>
    Network<U> cast() const {
        Network<U> out;
        for (const auto& w : weights) {
            out.weights.push_back(w.template cast<U>());
        }
        for (const auto& b : biases) {
            out.biases.push_back(b.template cast<U>());
        }
        return out;
    }
};

/// A trained or initialized surrogate.
struct MlpModel {
    /// 4, hidden widths..., 1
    std::vector<int> layer_sizes;
    Network<double> network;
    NormalizationRanges ranges;
    Precision precision = Precision::Double;

    /// Throws FormatError when the matrix shapes do not chain from 4 to 1.
    void validate() const;
    std::size_t parameter_count() const;
};

/// Zero-initialized model with the given hidden widths.
MlpModel make_model(const std::vector<int>& hidden_widths, const NormalizationRanges& ranges = {},
                    Precision precision = Precision::Double);

/// Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases.
/// Deterministic for a given seed.
void init_weights(MlpModel& model, std::uint64_t seed);

/// Flat view over all parameters, weights of each layer row-major then its
/// bias. Used by gradient checks and the optimizer tests.
double& parameter_at(Network<double>& net, std::size_t index);
double parameter_at(const Network<double>& net, std::size_t index);
std::size_t parameter_count(const Network<double>& net);

inline constexpr double kLn10 = std::numbers::ln10;

/// Post-activation outputs of every hidden layer, kept for the backward pass.
template <typename T>
struct ForwardCache {
    Matrix<T> input;
    std::vector<Matrix<T>> hidden;
};

/// Sbar for each column of `input` (4 x batch).
template <typename T>
RowVector<T> forward_pass(const Network<T>& net, const Matrix<T>& input, ForwardCache<T>* cache = nullptr) {
    const std::size_t layers = net.layer_count();
    Matrix<T> current = input;
    if (cache != nullptr) {
        cache->input = input;
        cache->hidden.clear();
    }
    for (std::size_t l = 0; l + 1 < layers; ++l) {
        Matrix<T> z(net.weights[l].cols(), current.cols());
        z.noalias() = net.weights[l].transpose() * current;
        z.colwise() += net.biases[l];
        z = z.cwiseMax(T(0));
        if (cache != nullptr) {
            cache->hidden.push_back(z);
        }
        current = std::move(z);
    }
    RowVector<T> out(current.cols());
    out.noalias() = net.weights.back().transpose() * current;
    out.array() += net.biases.back()(0);
    return out;
}

/// Accumulates d(loss)/d(parameters) into `grads` given d(loss)/d(Sbar) per
/// column. ReLU subgradient at zero is zero.
template <typename T>
void backward_pass(const Network<T>& net, const ForwardCache<T>& cache, const RowVector<T>& upstream,
                   Network<T>& grads) {
    const std::size_t layers = net.layer_count();
    Matrix<T> delta = upstream;  // 1 x batch
    for (std::size_t l = layers; l-- > 0;) {
        const Matrix<T>& below = l == 0 ? cache.input : cache.hidden[l - 1];
        grads.weights[l].noalias() += below * delta.transpose();
        grads.biases[l].noalias() += delta.rowwise().sum();
        if (l == 0) {
            break;
        }
        Matrix<T> propagated(net.weights[l].rows(), delta.cols());
        propagated.noalias() = net.weights[l] * delta;
        delta = (below.array() > T(0)).select(propagated.array(), T(0)).matrix();
    }
}

/// Sbar and S for every column of the batch.
struct ForwardResult {
    std::vector<double> log_site_fraction;
    std::vector<double> site_fraction;
};

ForwardResult forward(const MlpModel& model, const PointBatch& batch);

}  // namespace ftpinn::pinn
