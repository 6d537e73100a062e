#include "ftpinn/conditions_io.hpp"

#include <string>

#include "ftpinn/csv.hpp"
#include "ftpinn/errors.hpp"

namespace ftpinn::solver {

std::vector<kinetics::ReactionConditions> read_conditions(std::istream& in) {
    const csv::Table table = csv::read_numeric(in, kConditionsHeader);
    std::vector<kinetics::ReactionConditions> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        out.push_back({row[0], row[1], row[2], row[3]});
    }
    return out;
}

void write_conditions(std::ostream& out, std::span<const kinetics::ReactionConditions> conditions) {
    out << "p_CO_MPa,p_H2_MPa,p_H2O_MPa,T_K\n";
    for (const auto& c : conditions) {
        out << csv::format_double(c.p_co) << ',' << csv::format_double(c.p_h2) << ','
            << csv::format_double(c.p_h2o) << ',' << csv::format_double(c.temperature) << '\n';
    }
}

void write_solutions(std::ostream& out, std::span<const kinetics::ReactionConditions> conditions,
                     const kinetics::KineticParameters& params, const BatchResult& result,
                     std::span<const int> rate_carbon_numbers) {
    if (result.points.size() != conditions.size()) {
        throw DomainError("write_solutions: result and conditions differ in length");
    }
    for (const int n : rate_carbon_numbers) {
        if (n < 1 || n > params.max_carbon_number) {
            throw DomainError("rate carbon number " + std::to_string(n) + " outside [1, N_max]");
        }
    }

    out << "p_CO_MPa,p_H2_MPa,p_H2O_MPa,T_K,S,residual,iterations";
    for (const int n : rate_carbon_numbers) {
        out << ",R_paraffin_C" << n << ",R_olefin_C" << n;
    }
    out << '\n';

    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const auto& c = conditions[i];
        out << csv::format_double(c.p_co) << ',' << csv::format_double(c.p_h2) << ','
            << csv::format_double(c.p_h2o) << ',' << csv::format_double(c.temperature);
        const auto& point = result.points[i];
        if (!point.solution) {
            out << ",,,";
            for (std::size_t k = 0; k < rate_carbon_numbers.size(); ++k) {
                out << ",,";
            }
            out << '\n';
            continue;
        }
        const auto& sol = *point.solution;
        out << ',' << csv::format_double(sol.site_fraction) << ',' << csv::format_double(sol.residual) << ','
            << sol.iterations;
        if (!rate_carbon_numbers.empty()) {
            const auto rc = kinetics::evaluate_rate_constants(params, c.temperature);
            const auto rates = kinetics::product_rates(rc, c, sol.site_fraction, sol.profile);
            for (const int n : rate_carbon_numbers) {
                const auto idx = static_cast<std::size_t>(n - 1);
                out << ',' << csv::format_double(rates.paraffin[idx]) << ','
                    << csv::format_double(rates.olefin[idx]);
            }
        }
        out << '\n';
    }
}

}  // namespace ftpinn::solver
