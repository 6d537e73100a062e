#include "ftpinn/solver.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "ftpinn/errors.hpp"
#include "ftpinn/parallel.hpp"

namespace ftpinn::solver {

void SolveConfig::validate() const {
    if (!(abs_tol > 0.0)) {
        throw DomainError("abs_tol must be positive");
    }
    if (!(rel_tol > 0.0)) {
        throw DomainError("rel_tol must be positive");
    }
    if (max_iter < 1) {
        throw DomainError("max_iter must be at least 1");
    }
    if (!(bracket_floor > 0.0 && bracket_floor < 1.0)) {
        throw DomainError("bracket_floor must lie in (0, 1)");
    }
}

SiteFractionRoot solve_site_fraction(const kinetics::SiteBalance& balance, const SolveConfig& cfg) {
    cfg.validate();
    const double upper = 1.0 / balance.c0();
    if (balance.alpha_one() == 0.0) {
        return {upper, balance.residual(upper), 0};
    }

    double a = cfg.bracket_floor;
    double b = upper;
    double fa = balance.residual(a);
    double fb = balance.residual(b);
    if (!(fa > 0.0) || fb > 0.0) {
        throw BracketError("site balance residual does not change sign on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]: r(lo) = " + std::to_string(fa) +
                           ", r(hi) = " + std::to_string(fb));
    }
    const auto converged = [&cfg](double s, double r) {
        return std::abs(r) <= cfg.abs_tol && std::abs(r) <= cfg.rel_tol * s;
    };
    if (converged(b, fb)) {
        return {b, fb, 0};
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b);
        const double half = 0.5 * (c - b);
        if (std::abs(half) <= tol) {
            break;  // bracket collapsed onto adjacent doubles
        }

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * half * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : std::copysign(tol, half);
        fb = balance.residual(b);
        if (converged(b, fb)) {
            return {b, fb, iter};
        }
    }
    if (std::abs(fc) < std::abs(fb)) {
        std::swap(b, c);
        std::swap(fb, fc);
    }
    throw ConvergenceError("site balance did not reach |residual| <= min(" + std::to_string(cfg.abs_tol) +
                               ", rel_tol * S) within " + std::to_string(cfg.max_iter) + " iterations",
                           b, fb);
}

SiteBalanceSolution solve_site_balance(const kinetics::RateConstants& rc,
                                       const kinetics::ReactionConditions& cond, const SolveConfig& cfg) {
    cond.validate();
    const kinetics::SiteBalance balance(rc, cond);
    const SiteFractionRoot root = solve_site_fraction(balance, cfg);
    SiteBalanceSolution out;
    out.site_fraction = root.site_fraction;
    out.residual = root.residual;
    out.iterations = root.iterations;
    out.profile = balance.profile(root.site_fraction);
    return out;
}

SiteBalanceSolution solve_site_balance(const kinetics::KineticParameters& params,
                                       const kinetics::ReactionConditions& cond, const SolveConfig& cfg) {
    cond.validate();
    return solve_site_balance(kinetics::evaluate_rate_constants(params, cond.temperature), cond, cfg);
}

std::vector<std::size_t> BatchResult::failed_indices() const {
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].solution) {
            failed.push_back(i);
        }
    }
    return failed;
}

BatchResult solve_batch(const kinetics::KineticParameters& params,
                        std::span<const kinetics::ReactionConditions> conditions, const SolveConfig& cfg,
                        unsigned threads) {
    if (conditions.empty()) {
        throw DomainError("solve_batch needs at least one point");
    }
    cfg.validate();
    BatchResult result;
    result.points.resize(conditions.size());
    parallel_for(conditions.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                result.points[i].solution = solve_site_balance(params, conditions[i], cfg);
            } catch (const Error& e) {
                result.points[i].error = e.what();
            }
        }
    });
    return result;
}

}  // namespace ftpinn::solver
