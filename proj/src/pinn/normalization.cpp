#include "ftpinn/pinn/normalization.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ftpinn/errors.hpp"

namespace ftpinn::pinn {
namespace {

bool inside(const kinetics::ReactionConditions& c, const NormalizationRanges& r) {
    return c.p_co >= 0.0 && c.p_co <= r.p_co_max && c.p_h2 >= 0.0 && c.p_h2 <= r.p_h2_max &&
           c.p_h2o >= 0.0 && c.p_h2o <= r.p_h2o_max && c.temperature >= r.t_min &&
           c.temperature <= r.t_max;
}

UnitPoint scale(const kinetics::ReactionConditions& c, const NormalizationRanges& r) {
    return {c.p_co / r.p_co_max, c.p_h2 / r.p_h2_max, c.p_h2o / r.p_h2o_max,
            (c.temperature - r.t_min) / (r.t_max - r.t_min)};
}

}  // namespace

void NormalizationRanges::validate() const {
    const bool finite = std::isfinite(p_co_max) && std::isfinite(p_h2_max) && std::isfinite(p_h2o_max) &&
                        std::isfinite(t_min) && std::isfinite(t_max);
    if (!finite || !(p_co_max > 0.0) || !(p_h2_max > 0.0) || !(p_h2o_max > 0.0)) {
        throw DomainError("normalization ranges: pressure maxima must be positive and finite");
    }
    if (!(t_max > t_min) || !(t_min > 0.0)) {
        throw DomainError("normalization ranges: need 0 < T_min < T_max");
    }
}

UnitPoint normalize(const kinetics::ReactionConditions& cond, const NormalizationRanges& ranges) {
    if (!inside(cond, ranges)) {
        throw RangeError("reaction conditions outside the surrogate validity box", {0});
    }
    return scale(cond, ranges);
}

kinetics::ReactionConditions denormalize(const UnitPoint& point, const NormalizationRanges& ranges) {
    return {point[0] * ranges.p_co_max, point[1] * ranges.p_h2_max, point[2] * ranges.p_h2o_max,
            ranges.t_min + point[3] * (ranges.t_max - ranges.t_min)};
}

PointBatch normalize_batch(std::span<const kinetics::ReactionConditions> conditions,
                           const NormalizationRanges& ranges) {
    PointBatch batch(4, static_cast<Eigen::Index>(conditions.size()));
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (!inside(conditions[i], ranges)) {
            bad.push_back(i);
            continue;
        }
        const UnitPoint p = scale(conditions[i], ranges);
        for (int k = 0; k < 4; ++k) {
            batch(k, static_cast<Eigen::Index>(i)) = p[static_cast<std::size_t>(k)];
        }
    }
    if (!bad.empty()) {
        std::string rows;
        for (std::size_t k = 0; k < bad.size() && k < 20; ++k) {
            rows += (k ? "," : "") + std::to_string(bad[k]);
        }
        if (bad.size() > 20) {
            rows += ",...";
        }
        throw RangeError(std::to_string(bad.size()) + " row(s) outside the surrogate validity box: " + rows,
                         std::move(bad));
    }
    return batch;
}

}  // namespace ftpinn::pinn
