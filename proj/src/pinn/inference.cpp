#include "ftpinn/pinn/inference.hpp"

#include <cmath>

#include "ftpinn/errors.hpp"
#include "ftpinn/parallel.hpp"

namespace ftpinn::pinn {
namespace {

template <typename T>
std::vector<double> head(const std::vector<detail::PackedLayer<T>>& layers, const PointBatch& batch) {
    std::vector<double> out(static_cast<std::size_t>(batch.cols()));
    detail::dense_forward(layers, batch, nullptr, out.data());
    return out;
}

}  // namespace

Surrogate::Surrogate(MlpModel model) : model_(std::move(model)) {
    model_.validate();
    if (model_.precision == Precision::Single) {
        single_ = detail::pack_network<float>(model_.network);
    } else {
        double_ = detail::pack_network<double>(model_.network);
    }
}

std::vector<double> Surrogate::predict(const PointBatch& batch) const {
    if (model_.precision == Precision::Single) {
        return head(single_, batch);
    }
    return head(double_, batch);
}

std::vector<double> Surrogate::predict(std::span<const kinetics::ReactionConditions> conditions) const {
    return predict(normalize_batch(conditions, model_.ranges));
}

void attach_rates(InferenceResult& result, std::span<const kinetics::ReactionConditions> conditions,
                  const kinetics::KineticParameters& params, unsigned threads) {
    const std::size_t n = conditions.size();
    if (result.site_fraction.size() != n) {
        throw DomainError("site fractions and conditions differ in length");
    }
    result.profiles.assign(n, {});
    result.rates.assign(n, {});
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto rc = kinetics::evaluate_rate_constants(params, conditions[i].temperature);
            const double s = result.site_fraction[i];
            result.profiles[i] = kinetics::chain_growth_profile(rc, conditions[i], s, params.max_carbon_number);
            result.rates[i] = kinetics::product_rates(rc, conditions[i], s, result.profiles[i]);
        }
    });
}

InferenceResult infer_batch(const Surrogate& surrogate, std::span<const kinetics::ReactionConditions> conditions,
                            const kinetics::KineticParameters& params, bool with_rates, unsigned threads) {
    InferenceResult result;
    result.site_fraction = surrogate.predict(conditions);
    if (with_rates) {
        attach_rates(result, conditions, params, threads);
    }
    return result;
}

}  // namespace ftpinn::pinn
