#include "ftpinn/bench/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftpinn/errors.hpp"

namespace ftpinn::bench {

ErrorStats summarize(std::string quantity, std::vector<double> errors) {
    ErrorStats stats;
    stats.quantity = std::move(quantity);
    stats.count = errors.size();
    if (errors.empty()) {
        return stats;
    }
    stats.mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
    stats.max = *std::max_element(errors.begin(), errors.end());
    const std::size_t mid = errors.size() / 2;
    std::nth_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(mid), errors.end());
    const double upper = errors[mid];
    if (errors.size() % 2 == 1) {
        stats.median = upper;
    } else {
        const double lower = *std::max_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(mid));
        stats.median = 0.5 * (lower + upper);
    }
    return stats;
}

double relative_error_percent(double predicted, double truth) {
    if (predicted == truth) {
        return 0.0;
    }
    return 100.0 * std::abs(predicted - truth) / std::abs(truth);
}

pinn::PointBatch evaluation_grid(int points_per_axis) {
    if (points_per_axis < 1) {
        throw DomainError("evaluation grid needs at least one point per axis");
    }
    const auto n = static_cast<Eigen::Index>(points_per_axis);
    const double step = 1.0 / static_cast<double>(points_per_axis + 1);
    pinn::PointBatch grid(4, n * n * n * n);
    Eigen::Index col = 0;
    for (Eigen::Index a = 1; a <= n; ++a) {
        for (Eigen::Index b = 1; b <= n; ++b) {
            for (Eigen::Index c = 1; c <= n; ++c) {
                for (Eigen::Index d = 1; d <= n; ++d) {
                    grid(0, col) = static_cast<double>(a) * step;
                    grid(1, col) = static_cast<double>(b) * step;
                    grid(2, col) = static_cast<double>(c) * step;
                    grid(3, col) = static_cast<double>(d) * step;
                    ++col;
                }
            }
        }
    }
    return grid;
}

SitePredictor oracle_predictor(const kinetics::KineticParameters& params, const solver::SolveConfig& cfg,
                               unsigned threads) {
    return [params, cfg, threads](std::span<const kinetics::ReactionConditions> conditions) {
        const auto batch = solver::solve_batch(params, conditions, cfg, threads);
        std::vector<double> out(conditions.size(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (batch.points[i].solution) {
                out[i] = batch.points[i].solution->site_fraction;
            }
        }
        return out;
    };
}

AccuracyReport accuracy_report(const SitePredictor& predictor, const kinetics::KineticParameters& params,
                               const pinn::NormalizationRanges& ranges, const pinn::PointBatch& grid,
                               const solver::SolveConfig& cfg, unsigned threads) {
    const auto total = static_cast<std::size_t>(grid.cols());
    if (total == 0) {
        throw DomainError("accuracy report needs a non-empty grid");
    }
    std::vector<kinetics::ReactionConditions> conditions(total);
    for (std::size_t i = 0; i < total; ++i) {
        conditions[i] = pinn::denormalize(pinn::column_point(grid, static_cast<Eigen::Index>(i)), ranges);
    }

    const auto oracle = solver::solve_batch(params, conditions, cfg, threads);
    AccuracyReport report;
    report.grid_points = total;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < total; ++i) {
        if (oracle.points[i].solution) {
            kept.push_back(i);
        } else {
            report.excluded.push_back(i);
            report.exclusion_reasons.push_back(oracle.points[i].error);
        }
    }

    std::vector<kinetics::ReactionConditions> kept_conditions;
    kept_conditions.reserve(kept.size());
    for (const std::size_t i : kept) {
        kept_conditions.push_back(conditions[i]);
    }
    pinn::InferenceResult predicted;
    predicted.site_fraction = predictor(kept_conditions);
    if (predicted.site_fraction.size() != kept.size()) {
        throw DomainError("predictor returned " + std::to_string(predicted.site_fraction.size()) +
                          " values for " + std::to_string(kept.size()) + " points");
    }
    pinn::attach_rates(predicted, kept_conditions, params, threads);

    const int n_max = params.max_carbon_number;
    const auto last = static_cast<std::size_t>(n_max - 1);
    std::vector<double> s_err, alpha_err, paraffin_err, olefin_err;
    s_err.reserve(kept.size());
    alpha_err.reserve(kept.size() * static_cast<std::size_t>(n_max));
    paraffin_err.reserve(kept.size());
    olefin_err.reserve(kept.size());
    report.points.reserve(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const std::size_t i = kept[k];
        const auto& truth = *oracle.points[i].solution;
        const auto rc = kinetics::evaluate_rate_constants(params, conditions[i].temperature);
        const auto true_rates = kinetics::product_rates(rc, conditions[i], truth.site_fraction, truth.profile);

        const double s_pred = predicted.site_fraction[k];
        const double e = relative_error_percent(s_pred, truth.site_fraction);
        s_err.push_back(e);
        report.points.push_back(
            {pinn::column_point(grid, static_cast<Eigen::Index>(i)), truth.site_fraction, s_pred, e});
        for (std::size_t n = 0; n < truth.profile.alphas.size(); ++n) {
            alpha_err.push_back(relative_error_percent(predicted.profiles[k].alphas[n], truth.profile.alphas[n]));
        }
        paraffin_err.push_back(relative_error_percent(predicted.rates[k].paraffin[last], true_rates.paraffin[last]));
        olefin_err.push_back(relative_error_percent(predicted.rates[k].olefin[last], true_rates.olefin[last]));
    }
    report.stats.push_back(summarize("S", std::move(s_err)));
    report.stats.push_back(summarize("alpha", std::move(alpha_err)));
    report.stats.push_back(summarize("R_paraffin", std::move(paraffin_err)));
    report.stats.push_back(summarize("R_olefin", std::move(olefin_err)));
    return report;
}

AccuracyReport accuracy_report(const pinn::Surrogate& surrogate, const kinetics::KineticParameters& params,
                               const pinn::PointBatch& grid, unsigned threads) {
    const SitePredictor predictor = [&surrogate](std::span<const kinetics::ReactionConditions> conditions) {
        return surrogate.predict(conditions);
    };
    return accuracy_report(predictor, params, surrogate.model().ranges, grid, {}, threads);
}

}  // namespace ftpinn::bench
