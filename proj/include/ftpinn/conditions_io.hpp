#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/solver.hpp"

namespace ftpinn::solver {

/// Header of the batch input file.
inline const std::vector<std::string> kConditionsHeader{"p_CO_MPa", "p_H2_MPa", "p_H2O_MPa", "T_K"};

std::vector<kinetics::ReactionConditions> read_conditions(std::istream& in);

void write_conditions(std::ostream& out, std::span<const kinetics::ReactionConditions> conditions);

/// Writes the input columns followed by S,residual,iterations. For every n in
/// `rate_carbon_numbers` two further columns R_paraffin_C<n>,R_olefin_C<n> are
/// appended. Failed points keep their input columns and leave the rest empty.
void write_solutions(std::ostream& out, std::span<const kinetics::ReactionConditions> conditions,
                     const kinetics::KineticParameters& params, const BatchResult& result,
                     std::span<const int> rate_carbon_numbers = {});

}  // namespace ftpinn::solver
