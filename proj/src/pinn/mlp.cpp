#include "ftpinn/pinn/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ftpinn/errors.hpp"
#include "ftpinn/pinn/dense_forward.hpp"

namespace ftpinn::pinn {

const char* to_string(Precision precision) {
    return precision == Precision::Double ? "double" : "single";
}

Precision parse_precision(const std::string& text) {
    if (text == "double") {
        return Precision::Double;
    }
    if (text == "single") {
        return Precision::Single;
    }
    throw FormatError("precision must be 'double' or 'single', got '" + text + "'");
}

void MlpModel::validate() const {
    if (layer_sizes.size() < 2 || layer_sizes.front() != 4 || layer_sizes.back() != 1) {
        throw FormatError("layer_sizes must start with 4 and end with 1");
    }
    const std::size_t layers = layer_sizes.size() - 1;
    if (network.weights.size() != layers || network.biases.size() != layers) {
        throw FormatError("expected " + std::to_string(layers) + " layers, got " +
                          std::to_string(network.weights.size()));
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const auto fan_in = layer_sizes[l];
        const auto fan_out = layer_sizes[l + 1];
        if (fan_in < 1 || fan_out < 1) {
            throw FormatError("layer_sizes entries must be positive");
        }
        const auto& w = network.weights[l];
        if (w.rows() != fan_in || w.cols() != fan_out) {
            throw FormatError("layers[" + std::to_string(l) + "].W: expected shape [" + std::to_string(fan_in) +
                              "][" + std::to_string(fan_out) + "], got [" + std::to_string(w.rows()) + "][" +
                              std::to_string(w.cols()) + "]");
        }
        if (network.biases[l].size() != fan_out) {
            throw FormatError("layers[" + std::to_string(l) + "].b: expected length " + std::to_string(fan_out) +
                              ", got " + std::to_string(network.biases[l].size()));
        }
    }
    ranges.validate();
}

std::size_t MlpModel::parameter_count() const {
    return pinn::parameter_count(network);
}

MlpModel make_model(const std::vector<int>& hidden_widths, const NormalizationRanges& ranges,
                    Precision precision) {
    MlpModel model;
    model.layer_sizes.push_back(4);
    for (const int width : hidden_widths) {
        if (width < 1) {
            throw DomainError("hidden widths must be positive");
        }
        model.layer_sizes.push_back(width);
    }
    model.layer_sizes.push_back(1);
    for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
        model.network.weights.push_back(Matrix<double>::Zero(model.layer_sizes[l], model.layer_sizes[l + 1]));
        model.network.biases.push_back(Vector<double>::Zero(model.layer_sizes[l + 1]));
    }
    model.ranges = ranges;
    model.precision = precision;
    return model;
}

void init_weights(MlpModel& model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l < model.network.weights.size(); ++l) {
        auto& w = model.network.weights[l];
        const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            for (Eigen::Index j = 0; j < w.cols(); ++j) {
                const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                w(i, j) = (2.0 * unit - 1.0) * limit;
            }
        }
        model.network.biases[l].setZero();
    }
    if (model.precision == Precision::Single) {
        model.network = model.network.cast<float>().cast<double>();
    }
}

std::size_t parameter_count(const Network<double>& net) {
    std::size_t count = 0;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        count += static_cast<std::size_t>(net.weights[l].size() + net.biases[l].size());
    }
    return count;
}

double& parameter_at(Network<double>& net, std::size_t index) {
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        auto& w = net.weights[l];
        const auto w_size = static_cast<std::size_t>(w.size());
        if (index < w_size) {
            const auto row = static_cast<Eigen::Index>(index / static_cast<std::size_t>(w.cols()));
            const auto col = static_cast<Eigen::Index>(index % static_cast<std::size_t>(w.cols()));
            return w(row, col);
        }
        index -= w_size;
        auto& b = net.biases[l];
        if (index < static_cast<std::size_t>(b.size())) {
            return b(static_cast<Eigen::Index>(index));
        }
        index -= static_cast<std::size_t>(b.size());
    }
    throw DomainError("parameter index out of range");
}

double parameter_at(const Network<double>& net, std::size_t index) {
    return parameter_at(const_cast<Network<double>&>(net), index);
}

namespace {

template <typename T>
ForwardResult forward_as(const Network<double>& net, const PointBatch& batch) {
    ForwardResult out;
    out.log_site_fraction.resize(static_cast<std::size_t>(batch.cols()));
    out.site_fraction.resize(static_cast<std::size_t>(batch.cols()));
    detail::dense_forward(detail::pack_network<T>(net), batch, out.log_site_fraction.data(),
                          out.site_fraction.data());
    return out;
}

}  // namespace

ForwardResult forward(const MlpModel& model, const PointBatch& batch) {
    if (model.precision == Precision::Single) {
        return forward_as<float>(model.network, batch);
    }
    return forward_as<double>(model.network, batch);
}

}  // namespace ftpinn::pinn
