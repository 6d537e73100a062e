#pragma once

#include <array>
#include <span>

#include <Eigen/Core>

#include "ftpinn/kinetics.hpp"

namespace ftpinn::pinn {

/// Min-max box of the surrogate's inputs. Pressure minima are zero.
struct NormalizationRanges {
    double p_co_max = 6.0;      // MPa
    double p_h2_max = 6.0;      // MPa
    double p_h2o_max = 1.0;     // MPa
    double t_min = 473.15;      // K
    double t_max = 513.15;      // K

    void validate() const;

    friend bool operator==(const NormalizationRanges&, const NormalizationRanges&) = default;
};

/// One normalized point (p_CO, p_H2, p_H2O, T) mapped to [0,1]^4.
using UnitPoint = std::array<double, 4>;

/// Columns are points; rows are the four normalized coordinates.
using PointBatch = Eigen::Matrix<double, 4, Eigen::Dynamic>;

/// Throws RangeError when the conditions leave the box.
UnitPoint normalize(const kinetics::ReactionConditions& cond, const NormalizationRanges& ranges);

kinetics::ReactionConditions denormalize(const UnitPoint& point, const NormalizationRanges& ranges);

inline UnitPoint column_point(const PointBatch& batch, Eigen::Index col) {
    return {batch(0, col), batch(1, col), batch(2, col), batch(3, col)};
}

/// Normalizes a whole batch; the RangeError lists every offending row.
PointBatch normalize_batch(std::span<const kinetics::ReactionConditions> conditions,
                           const NormalizationRanges& ranges);

}  // namespace ftpinn::pinn
