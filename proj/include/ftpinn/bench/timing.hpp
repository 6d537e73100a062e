#pragma once

// Throughput of batched surrogate inference against the per-point solver.
// The speedup at batch size N is (N * t_conv) / t_surrogate(N), where t_conv
// is the mean wall time of one solve_site_balance call.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/inference.hpp"
#include "ftpinn/solver.hpp"

namespace ftpinn::bench {

struct TimingConfig {
    std::vector<std::size_t> batch_sizes{1, 10, 100, 1000, 10000};
    /// Measured runs per batch size.
    int repetitions = 30;
    /// Unmeasured runs before each measurement.
    int warmup = 3;
    /// The repetitions are split into this many groups; the reported time is
    /// the median of the group means.
    int groups = 5;
    /// Points solved one by one to estimate t_conv.
    std::size_t solver_sample = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

struct TimingRecord {
    std::string backend;
    std::size_t batch_size = 0;
    double seconds_per_batch = 0.0;
    int repetitions = 0;
    /// N * t_conv
    double baseline_seconds = 0.0;
    double speedup = 0.0;

    friend bool operator==(const TimingRecord&, const TimingRecord&) = default;
};

struct TimingReport {
    double t_conv = 0.0;
    std::vector<TimingRecord> records;
};

/// Median of `groups` group means over `values`, in input order.
double median_of_means(const std::vector<double>& values, int groups);

/// Mean wall time of one solve over `cfg.solver_sample` random conditions.
double measure_solver_time(const kinetics::KineticParameters& params, const pinn::NormalizationRanges& ranges,
                           const TimingConfig& cfg, const solver::SolveConfig& solve = {});

/// Times batched surrogate inference (normalization, forward pass and head)
/// at every batch size against N * t_conv.
TimingReport timing_sweep(const pinn::Surrogate& surrogate, const kinetics::KineticParameters& params,
                          const TimingConfig& cfg, const solver::SolveConfig& solve = {});

/// The identity baseline: the solver timed against itself. The per-batch
/// time is N * t_conv, so every speedup is exactly one.
TimingReport solver_timing_sweep(const kinetics::KineticParameters& params, const pinn::NormalizationRanges& ranges,
                                 const TimingConfig& cfg, const solver::SolveConfig& solve = {});

/// "model name" from /proc/cpuinfo plus the logical core count.
std::string hardware_description();

}  // namespace ftpinn::bench
