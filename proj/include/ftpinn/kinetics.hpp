#pragma once

// CO-insertion Fischer-Tropsch microkinetics: Arrhenius constants, the
// chain-growth probabilities, the site balance and the product formation
// rates. Every function here is pure and safe to call concurrently.

#include <cstddef>
#include <span>
#include <vector>

namespace ftpinn::kinetics {

/// J/(mol K)
inline constexpr double kGasConstant = 8.314;

/// Pre-exponential factor and energy (J/mol) of an Arrhenius/van 't Hoff law.
struct Arrhenius {
    double prefactor = 1.0;
    double energy = 0.0;

    /// prefactor * exp(-energy / (R T))
    double at(double temperature) const;
};

/// Adjustable parameters of the model. Constants are named after the
/// elementary step they belong to: K* are equilibrium constants, k* rate
/// constants. k8E and k80 are the ethylene and 1-olefin desorption prefactors.
struct KineticParameters {
    Arrhenius K1;   // MPa^-1
    Arrhenius K2;   // MPa^-1
    Arrhenius K4;
    Arrhenius K5;
    Arrhenius K6;
    Arrhenius k3;
    Arrhenius k7;
    Arrhenius k7M;
    Arrhenius k8E;
    Arrhenius k80;
    /// Per-carbon increment of the 1-olefin desorption activation energy, J/mol.
    double olefin_energy_increment = 0.0;
    /// Longest chain carried explicitly in the sums; the rest is the tail correction.
    int max_carbon_number = 100;

    /// Throws DomainError when an invariant is broken. The two olefin
    /// desorption prefactors may be zero (no olefin termination); every other
    /// prefactor must be strictly positive.
    void validate() const;
};

/// Partial pressures in MPa, temperature in K.
struct ReactionConditions {
    double p_co = 0.0;
    double p_h2 = 0.0;
    double p_h2o = 0.0;
    double temperature = 0.0;

    void validate() const;

    friend bool operator==(const ReactionConditions&, const ReactionConditions&) = default;
};

/// Every constant of the model evaluated at one temperature.
struct RateConstants {
    double K1 = 0.0, K2 = 0.0, K4 = 0.0, K5 = 0.0, K6 = 0.0;
    double k3 = 0.0, k7 = 0.0, k7M = 0.0, k8E = 0.0, k80 = 0.0;
    /// c = -dE / (R T); non-positive whenever dE >= 0.
    double chain_length_factor = 0.0;
    int max_carbon_number = 100;
};

struct SiteCoefficients {
    double c0 = 0.0;
    double cS = 0.0;
};

/// alphas[n-1] = alpha_n, cumulative[n-1] = alpha_1 * ... * alpha_n.
struct ChainGrowthProfile {
    std::vector<double> alphas;
    std::vector<double> cumulative;
    /// Geometric closure of the chain sum beyond max_carbon_number.
    double tail = 0.0;
    /// sum of cumulative + tail.
    double chain_sum = 0.0;
};

/// paraffin[n-1] is the C_n paraffin rate; olefin[n-1] the C_n 1-olefin rate
/// (olefin[0] is always zero, there is no C1 olefin).
struct ProductRates {
    std::vector<double> paraffin;
    std::vector<double> olefin;
};

RateConstants evaluate_rate_constants(const KineticParameters& params, double temperature);

SiteCoefficients site_coefficients(const RateConstants& rc, const ReactionConditions& cond);

double alpha_one(const RateConstants& rc, const ReactionConditions& cond);

ChainGrowthProfile chain_growth_profile(const RateConstants& rc, const ReactionConditions& cond,
                                        double site_fraction, int max_carbon_number);

double site_balance_rhs(const RateConstants& rc, const ReactionConditions& cond, double site_fraction);

double site_balance_residual(const RateConstants& rc, const ReactionConditions& cond,
                             double site_fraction);

ProductRates product_rates(const RateConstants& rc, const ReactionConditions& cond,
                           double site_fraction, const ChainGrowthProfile& profile);

/// k8 * exp(n c) for n = 0..N; entries 0 and 1 are zero, entry 2 uses k8E and
/// the rest k80. exp(n c) is accumulated by repeated multiplication of exp(c).
std::vector<double> olefin_desorption_terms(const RateConstants& rc);

/// The site balance prepared for one (constants, conditions) pair so that
/// repeated evaluations in S allocate nothing and skip the exponentials.
class SiteBalance {
  public:
    SiteBalance(const RateConstants& rc, const ReactionConditions& cond);

    double c0() const noexcept { return coeffs_.c0; }
    double cS() const noexcept { return coeffs_.cS; }
    double alpha_one() const noexcept { return alpha_one_; }
    int max_carbon_number() const noexcept { return max_carbon_number_; }

    /// Chain sum including the tail correction at site fraction S.
    double chain_sum(double site_fraction) const;
    /// 1 / (c0 + cS * chain_sum(S))
    double rhs(double site_fraction) const;
    double residual(double site_fraction) const { return rhs(site_fraction) - site_fraction; }
    ChainGrowthProfile profile(double site_fraction) const;

  private:
    double growth_ = 0.0;        // k3 K1 p_CO
    double termination_ = 0.0;   // k7 sqrt(K2 p_H2)
    SiteCoefficients coeffs_;
    double alpha_one_ = 0.0;
    int max_carbon_number_ = 0;
    std::vector<double> desorption_;
};

}  // namespace ftpinn::kinetics
