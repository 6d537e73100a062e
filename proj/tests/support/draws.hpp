#pragma once

// Random parameter sets and conditions shared by the property tests and the
// acceptance binary.

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/params_io.hpp"
#include "ftpinn/pinn/normalization.hpp"

namespace ftpinn::support {

inline std::filesystem::path source_dir() {
    return FTPINN_SOURCE_DIR;
}

inline kinetics::KineticParameters synthetic_parameters() {
    return kinetics::load_parameters(source_dir() / "data" / "synthetic_params.json");
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Each prefactor of the synthetic set scaled by 10^U(-1,1), each energy by
/// U(0.9,1.1), dE drawn from [0, 3000] J/mol.
inline kinetics::KineticParameters random_parameters(std::mt19937_64& rng) {
    kinetics::KineticParameters p = synthetic_parameters();
    for (kinetics::Arrhenius* law : {&p.K1, &p.K2, &p.K4, &p.K5, &p.K6, &p.k3, &p.k7, &p.k7M, &p.k8E, &p.k80}) {
        law->prefactor *= std::pow(10.0, uniform(rng, -1.0, 1.0));
        law->energy *= uniform(rng, 0.9, 1.1);
    }
    p.olefin_energy_increment = uniform(rng, 0.0, 3000.0);
    return p;
}

/// Uniform over the open normalization box.
inline kinetics::ReactionConditions random_conditions(std::mt19937_64& rng,
                                                      const pinn::NormalizationRanges& ranges = {}) {
    pinn::UnitPoint x{};
    for (double& v : x) {
        do {
            v = uniform(rng, 0.0, 1.0);
        } while (v == 0.0);
    }
    return pinn::denormalize(x, ranges);
}

inline std::vector<kinetics::ReactionConditions> random_condition_set(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<kinetics::ReactionConditions> out(count);
    for (auto& c : out) {
        c = random_conditions(rng);
    }
    return out;
}

/// Plain fixed-step bisection on the site-balance residual, kept deliberately
/// separate from the library's Brent iteration.
inline double bisect_site_fraction(const kinetics::RateConstants& rc, const kinetics::ReactionConditions& cond,
                                   int steps = 200) {
    const auto coeffs = kinetics::site_coefficients(rc, cond);
    double lo = 1e-16;
    double hi = 1.0 / coeffs.c0;
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (kinetics::site_balance_residual(rc, cond, mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ftpinn::support
