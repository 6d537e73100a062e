#include "ftpinn/kinetics.hpp"

#include <cmath>
#include <string>

#include "ftpinn/errors.hpp"

namespace ftpinn::kinetics {
namespace {

double checked_constant(const Arrhenius& law, double temperature, const char* name) {
    const double value = law.at(temperature);
    if (!std::isfinite(value)) {
        throw DomainError(std::string("rate constant ") + name + " is not finite at T = " +
                          std::to_string(temperature) + " K");
    }
    return value;
}

void check_site_fraction(double site_fraction) {
    if (!(site_fraction > 0.0) || !std::isfinite(site_fraction)) {
        throw DomainError("site fraction must be positive and finite, got " + std::to_string(site_fraction));
    }
}

void check_prefactor(const Arrhenius& law, const char* name, bool allow_zero) {
    const bool ok = allow_zero ? law.prefactor >= 0.0 : law.prefactor > 0.0;
    if (!ok || !std::isfinite(law.prefactor) || !std::isfinite(law.energy)) {
        throw DomainError(std::string("invalid Arrhenius law for ") + name);
    }
}

}  // namespace

double Arrhenius::at(double temperature) const {
    return prefactor * std::exp(-energy / (kGasConstant * temperature));
}

void KineticParameters::validate() const {
    check_prefactor(K1, "K1", false);
    check_prefactor(K2, "K2", false);
    check_prefactor(K4, "K4", false);
    check_prefactor(K5, "K5", false);
    check_prefactor(K6, "K6", false);
    check_prefactor(k3, "k3", false);
    check_prefactor(k7, "k7", false);
    check_prefactor(k7M, "k7M", false);
    check_prefactor(k8E, "k8E", true);
    check_prefactor(k80, "k80", true);
    if (!(olefin_energy_increment >= 0.0) || !std::isfinite(olefin_energy_increment)) {
        throw DomainError("dE must be finite and non-negative");
    }
    if (max_carbon_number < 3) {
        throw DomainError("N_max must be at least 3");
    }
}

void ReactionConditions::validate() const {
    if (!std::isfinite(p_co) || !std::isfinite(p_h2) || !std::isfinite(p_h2o) || !std::isfinite(temperature)) {
        throw DomainError("reaction conditions must be finite");
    }
    if (p_co < 0.0 || p_h2o < 0.0) {
        throw DomainError("partial pressures must be non-negative");
    }
    if (!(p_h2 > 0.0)) {
        throw DomainError("p_H2 must be positive (division by zero in cS)");
    }
    if (!(temperature > 0.0)) {
        throw DomainError("temperature must be positive");
    }
}

RateConstants evaluate_rate_constants(const KineticParameters& params, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw DomainError("temperature must be positive and finite");
    }
    RateConstants rc;
    rc.K1 = checked_constant(params.K1, temperature, "K1");
    rc.K2 = checked_constant(params.K2, temperature, "K2");
    rc.K4 = checked_constant(params.K4, temperature, "K4");
    rc.K5 = checked_constant(params.K5, temperature, "K5");
    rc.K6 = checked_constant(params.K6, temperature, "K6");
    rc.k3 = checked_constant(params.k3, temperature, "k3");
    rc.k7 = checked_constant(params.k7, temperature, "k7");
    rc.k7M = checked_constant(params.k7M, temperature, "k7M");
    rc.k8E = checked_constant(params.k8E, temperature, "k8E");
    rc.k80 = checked_constant(params.k80, temperature, "k80");
    rc.chain_length_factor = -params.olefin_energy_increment / (kGasConstant * temperature);
    rc.max_carbon_number = params.max_carbon_number;
    return rc;
}

SiteCoefficients site_coefficients(const RateConstants& rc, const ReactionConditions& cond) {
    if (!(cond.p_h2 > 0.0)) {
        throw DomainError("p_H2 must be positive (division by zero in cS)");
    }
    const double h2_root = std::sqrt(rc.K2 * cond.p_h2);
    SiteCoefficients out;
    out.c0 = 1.0 + rc.K1 * cond.p_co + h2_root;
    out.cS = cond.p_h2o / (rc.K2 * rc.K2 * rc.K4 * rc.K5 * rc.K6 * cond.p_h2 * cond.p_h2) + h2_root;
    if (!std::isfinite(out.c0) || !std::isfinite(out.cS)) {
        throw DomainError("site coefficients are not finite");
    }
    return out;
}

double alpha_one(const RateConstants& rc, const ReactionConditions& cond) {
    const double growth = rc.k3 * rc.K1 * cond.p_co;
    const double methanation = rc.k7M * std::sqrt(rc.K2 * cond.p_h2);
    if (growth + methanation == 0.0) {
        throw DomainError("alpha_1 is 0/0: both chain initiation and methanation vanish");
    }
    return growth / (growth + methanation);
}

std::vector<double> olefin_desorption_terms(const RateConstants& rc) {
    const int n_max = rc.max_carbon_number;
    std::vector<double> terms(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double step = std::exp(rc.chain_length_factor);
    double decay = step * step;
    terms[2] = rc.k8E * decay;
    for (int n = 3; n <= n_max; ++n) {
        decay *= step;
        terms[static_cast<std::size_t>(n)] = rc.k80 * decay;
    }
    return terms;
}

SiteBalance::SiteBalance(const RateConstants& rc, const ReactionConditions& cond)
    : growth_(rc.k3 * rc.K1 * cond.p_co),
      termination_(rc.k7 * std::sqrt(rc.K2 * cond.p_h2)),
      coeffs_(site_coefficients(rc, cond)),
      alpha_one_(kinetics::alpha_one(rc, cond)),
      max_carbon_number_(rc.max_carbon_number),
      desorption_(olefin_desorption_terms(rc)) {
    if (max_carbon_number_ < 3) {
        throw DomainError("N_max must be at least 3");
    }
}

double SiteBalance::chain_sum(double site_fraction) const {
    check_site_fraction(site_fraction);
    const double growth = growth_ * site_fraction;
    const double denominator_base = growth + termination_ * site_fraction;
    double product = alpha_one_;
    double sum = product;
    double alpha = alpha_one_;
    for (int n = 2; n <= max_carbon_number_; ++n) {
        alpha = growth / (denominator_base + desorption_[static_cast<std::size_t>(n)]);
        product *= alpha;
        sum += product;
    }
    if (alpha == 1.0) {
        throw TailDivergenceError("alpha at N_max equals 1; the geometric tail diverges");
    }
    return sum + product * alpha / (1.0 - alpha);
}

double SiteBalance::rhs(double site_fraction) const {
    return 1.0 / (coeffs_.c0 + coeffs_.cS * chain_sum(site_fraction));
}

ChainGrowthProfile SiteBalance::profile(double site_fraction) const {
    check_site_fraction(site_fraction);
    const auto n_max = static_cast<std::size_t>(max_carbon_number_);
    ChainGrowthProfile out;
    out.alphas.resize(n_max);
    out.cumulative.resize(n_max);

    const double growth = growth_ * site_fraction;
    const double denominator_base = growth + termination_ * site_fraction;
    double product = alpha_one_;
    double sum = product;
    out.alphas[0] = alpha_one_;
    out.cumulative[0] = product;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const double alpha = growth / (denominator_base + desorption_[n]);
        product *= alpha;
        sum += product;
        out.alphas[n - 1] = alpha;
        out.cumulative[n - 1] = product;
    }
    const double last = out.alphas.back();
    if (last == 1.0) {
        throw TailDivergenceError("alpha at N_max equals 1; the geometric tail diverges");
    }
    out.tail = product * last / (1.0 - last);
    out.chain_sum = sum + out.tail;
    return out;
}

ChainGrowthProfile chain_growth_profile(const RateConstants& rc, const ReactionConditions& cond,
                                        double site_fraction, int max_carbon_number) {
    RateConstants truncated = rc;
    truncated.max_carbon_number = max_carbon_number;
    return SiteBalance(truncated, cond).profile(site_fraction);
}

double site_balance_rhs(const RateConstants& rc, const ReactionConditions& cond, double site_fraction) {
    return SiteBalance(rc, cond).rhs(site_fraction);
}

double site_balance_residual(const RateConstants& rc, const ReactionConditions& cond,
                             double site_fraction) {
    return SiteBalance(rc, cond).residual(site_fraction);
}

ProductRates product_rates(const RateConstants& rc, const ReactionConditions& cond,
                           double site_fraction, const ChainGrowthProfile& profile) {
    check_site_fraction(site_fraction);
    const auto n_max = profile.cumulative.size();
    if (n_max < 2 || profile.alphas.size() != n_max) {
        throw DomainError("chain growth profile is malformed");
    }
    RateConstants sized = rc;
    sized.max_carbon_number = static_cast<int>(n_max);
    const std::vector<double> desorption = olefin_desorption_terms(sized);

    const double h2_root = std::sqrt(rc.K2 * cond.p_h2);
    const double s2 = site_fraction * site_fraction;

    ProductRates out;
    out.paraffin.resize(n_max);
    out.olefin.assign(n_max, 0.0);
    out.paraffin[0] = rc.k7M * h2_root * profile.alphas[0] * s2;
    const double paraffin_scale = rc.k7 * h2_root * s2;
    for (std::size_t n = 2; n <= n_max; ++n) {
        out.paraffin[n - 1] = paraffin_scale * profile.cumulative[n - 1];
        out.olefin[n - 1] = desorption[n] * profile.cumulative[n - 1] * site_fraction;
    }
    return out;
}

}  // namespace ftpinn::kinetics
