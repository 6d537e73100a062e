#include "ftpinn/pinn/physics_loss.hpp"

#include <cmath>
#include <string>

#include "ftpinn/errors.hpp"
#include "ftpinn/parallel.hpp"

namespace ftpinn::pinn {

KineticsBatch KineticsBatch::prepare(const kinetics::KineticParameters& params, const PointBatch& points,
                                     const NormalizationRanges& ranges) {
    KineticsBatch out;
    const auto n = static_cast<std::size_t>(points.cols());
    out.max_carbon_number_ = params.max_carbon_number;
    out.c0_.resize(n);
    out.cS_.resize(n);
    out.alpha_one_.resize(n);
    out.growth_.resize(n);
    out.termination_.resize(n);
    out.ethylene_.resize(n);
    out.olefin_.resize(n);
    out.decay_step_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cond = denormalize(column_point(points, static_cast<Eigen::Index>(i)), ranges);
        const auto rc = kinetics::evaluate_rate_constants(params, cond.temperature);
        const auto coeffs = kinetics::site_coefficients(rc, cond);
        out.c0_[i] = coeffs.c0;
        out.cS_[i] = coeffs.cS;
        out.alpha_one_[i] = kinetics::alpha_one(rc, cond);
        out.growth_[i] = rc.k3 * rc.K1 * cond.p_co;
        out.termination_[i] = rc.k7 * std::sqrt(rc.K2 * cond.p_h2);
        out.ethylene_[i] = rc.k8E;
        out.olefin_[i] = rc.k80;
        out.decay_step_[i] = std::exp(rc.chain_length_factor);
    }
    return out;
}

KineticsBatch KineticsBatch::gather(std::span<const std::size_t> indices) const {
    KineticsBatch out;
    out.max_carbon_number_ = max_carbon_number_;
    auto pick = [&](const std::vector<double>& src, std::vector<double>& dst) {
        dst.resize(indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k) {
            dst[k] = src.at(indices[k]);
        }
    };
    pick(c0_, out.c0_);
    pick(cS_, out.cS_);
    pick(alpha_one_, out.alpha_one_);
    pick(growth_, out.growth_);
    pick(termination_, out.termination_);
    pick(ethylene_, out.ethylene_);
    pick(olefin_, out.olefin_);
    pick(decay_step_, out.decay_step_);
    return out;
}

template <typename T>
T KineticsBatch::site_response(std::size_t i, T site_fraction, T* slope) const {
    const T growth_rate = static_cast<T>(growth_[i]);
    const T growth = growth_rate * site_fraction;
    const T base = growth + static_cast<T>(termination_[i]) * site_fraction;
    const T step = static_cast<T>(decay_step_[i]);
    const T olefin = static_cast<T>(olefin_[i]);

    T alpha = static_cast<T>(alpha_one_[i]);
    T product = alpha;
    T sum = product;
    T d_alpha = 0;
    T d_product = 0;
    T d_sum = 0;
    T decay = step * step;
    T desorption = static_cast<T>(ethylene_[i]) * decay;
    for (int n = 2; n <= max_carbon_number_; ++n) {
        if (n > 2) {
            decay *= step;
            desorption = olefin * decay;
        }
        const T denominator = base + desorption;
        alpha = growth / denominator;
        d_alpha = growth_rate * desorption / (denominator * denominator);
        d_product = d_product * alpha + product * d_alpha;
        product *= alpha;
        sum += product;
        d_sum += d_product;
    }
    if (alpha == T(1)) {
        throw TailDivergenceError("alpha at N_max equals 1; the geometric tail diverges");
    }
    const T complement = T(1) - alpha;
    const T tail = product * alpha / complement;
    const T chain_sum = sum + tail;
    const T response = T(1) / (static_cast<T>(c0_[i]) + static_cast<T>(cS_[i]) * chain_sum);
    if (slope != nullptr) {
        const T d_tail = (d_product * alpha + product * d_alpha) / complement +
                         product * alpha * d_alpha / (complement * complement);
        *slope = -static_cast<T>(cS_[i]) * response * response * (d_sum + d_tail);
    }
    return response;
}

template <typename T>
double evaluate_physics_loss(const Network<T>& net, const Matrix<T>& inputs, const KineticsBatch& kinetics,
                             Network<T>* gradients, std::vector<double>* point_residuals, unsigned threads) {
    const auto n = static_cast<std::size_t>(inputs.cols());
    if (n == 0) {
        throw DomainError("physics loss needs a non-empty batch");
    }
    if (kinetics.size() != n) {
        throw DomainError("kinetics batch and input batch differ in size");
    }

    ForwardCache<T> cache;
    const RowVector<T> sbar = forward_pass(net, inputs, gradients != nullptr ? &cache : nullptr);

    std::vector<T> residual(n);
    RowVector<T> upstream;
    if (gradients != nullptr) {
        upstream.resize(static_cast<Eigen::Index>(n));
    }
    const T inv_n = T(1) / static_cast<T>(n);
    const T ln10 = static_cast<T>(kLn10);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto col = static_cast<Eigen::Index>(i);
            const T predicted = std::exp(-ln10 * sbar(col));
            T slope = 0;
            const T actual = kinetics.site_response<T>(i, predicted, gradients != nullptr ? &slope : nullptr);
            const T diff = predicted - actual;
            residual[i] = std::abs(diff);
            if (gradients != nullptr) {
                const T sign = diff > T(0) ? T(1) : (diff < T(0) ? T(-1) : T(0));
                upstream(col) = inv_n * sign * (T(1) - slope) * (-ln10 * predicted);
            }
        }
    });

    double total = 0.0;
    for (const T r : residual) {
        total += static_cast<double>(r);
    }
    if (point_residuals != nullptr) {
        point_residuals->assign(residual.begin(), residual.end());
    }
    if (gradients != nullptr) {
        *gradients = net.zeros_like();
        backward_pass(net, cache, upstream, *gradients);
    }
    return total / static_cast<double>(n);
}

template float KineticsBatch::site_response<float>(std::size_t, float, float*) const;
template double KineticsBatch::site_response<double>(std::size_t, double, double*) const;
template double evaluate_physics_loss<float>(const Network<float>&, const Matrix<float>&, const KineticsBatch&,
                                             Network<float>*, std::vector<double>*, unsigned);
template double evaluate_physics_loss<double>(const Network<double>&, const Matrix<double>&,
                                              const KineticsBatch&, Network<double>*, std::vector<double>*,
                                              unsigned);

namespace {

template <typename T>
double loss_as(const MlpModel& model, const PointBatch& batch, const KineticsBatch& kinetics,
               Network<double>* gradients, std::vector<double>* residuals) {
    const Network<T> net = model.network.template cast<T>();
    const Matrix<T> inputs = batch.template cast<T>();
    if (gradients == nullptr) {
        return evaluate_physics_loss<T>(net, inputs, kinetics, nullptr, residuals);
    }
    Network<T> typed;
    const double loss = evaluate_physics_loss<T>(net, inputs, kinetics, &typed, residuals);
    *gradients = typed.template cast<double>();
    return loss;
}

double dispatch(const MlpModel& model, const PointBatch& batch, const kinetics::KineticParameters& params,
                Network<double>* gradients, std::vector<double>* residuals) {
    const auto kinetics = KineticsBatch::prepare(params, batch, model.ranges);
    if (model.precision == Precision::Single) {
        return loss_as<float>(model, batch, kinetics, gradients, residuals);
    }
    return loss_as<double>(model, batch, kinetics, gradients, residuals);
}

}  // namespace

double physics_loss(const MlpModel& model, const PointBatch& batch, const kinetics::KineticParameters& params) {
    return dispatch(model, batch, params, nullptr, nullptr);
}

LossGradient loss_gradients(const MlpModel& model, const PointBatch& batch,
                            const kinetics::KineticParameters& params) {
    LossGradient out;
    out.loss = dispatch(model, batch, params, &out.gradients, nullptr);
    return out;
}

std::vector<double> point_residuals(const MlpModel& model, const PointBatch& batch,
                                    const kinetics::KineticParameters& params) {
    std::vector<double> residuals;
    dispatch(model, batch, params, nullptr, &residuals);
    return residuals;
}

}  // namespace ftpinn::pinn
