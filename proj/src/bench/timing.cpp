#include "ftpinn/bench/timing.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <thread>

#include "ftpinn/errors.hpp"

namespace ftpinn::bench {
namespace {

using Clock = std::chrono::steady_clock;

// Keeps the optimizer from discarding timed work.
volatile double g_sink = 0.0;

std::vector<kinetics::ReactionConditions> random_conditions(std::size_t count,
                                                            const pinn::NormalizationRanges& ranges,
                                                            std::mt19937_64& rng) {
    std::vector<kinetics::ReactionConditions> out(count);
    for (auto& cond : out) {
        pinn::UnitPoint p{};
        for (double& x : p) {
            // Open interval, so no pressure is exactly zero.
            x = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        }
        cond = pinn::denormalize(p, ranges);
    }
    return out;
}

template <typename Body>
std::vector<double> time_runs(int warmup, int repetitions, Body&& body) {
    for (int i = 0; i < warmup; ++i) {
        body();
    }
    std::vector<double> seconds;
    seconds.reserve(static_cast<std::size_t>(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto start = Clock::now();
        body();
        seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    return seconds;
}

}  // namespace

void TimingConfig::validate() const {
    if (batch_sizes.empty()) {
        return;
    }
    for (const std::size_t n : batch_sizes) {
        if (n < 1) {
            throw DomainError("batch sizes must be positive");
        }
    }
    if (repetitions < 1 || warmup < 0 || groups < 1 || groups > repetitions) {
        throw DomainError("timing needs repetitions >= 1, warmup >= 0 and 1 <= groups <= repetitions");
    }
    if (solver_sample < 1 || threads < 1) {
        throw DomainError("solver_sample and threads must be positive");
    }
}

double median_of_means(const std::vector<double>& values, int groups) {
    if (values.empty() || groups < 1) {
        throw DomainError("median_of_means needs values and at least one group");
    }
    const std::size_t g = std::min(values.size(), static_cast<std::size_t>(groups));
    std::vector<double> means;
    for (std::size_t k = 0; k < g; ++k) {
        const std::size_t begin = values.size() * k / g;
        const std::size_t end = values.size() * (k + 1) / g;
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sum += values[i];
        }
        means.push_back(sum / static_cast<double>(end - begin));
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = means.size() / 2;
    return means.size() % 2 == 1 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

double measure_solver_time(const kinetics::KineticParameters& params, const pinn::NormalizationRanges& ranges,
                           const TimingConfig& cfg, const solver::SolveConfig& solve) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const auto sample = random_conditions(cfg.solver_sample, ranges, rng);
    const auto runs = time_runs(cfg.warmup, cfg.repetitions, [&] {
        double acc = 0.0;
        for (const auto& cond : sample) {
            acc += solver::solve_site_balance(params, cond, solve).site_fraction;
        }
        g_sink = g_sink + acc;
    });
    return median_of_means(runs, cfg.groups) / static_cast<double>(sample.size());
}

TimingReport timing_sweep(const pinn::Surrogate& surrogate, const kinetics::KineticParameters& params,
                          const TimingConfig& cfg, const solver::SolveConfig& solve) {
    cfg.validate();
    TimingReport report;
    if (cfg.batch_sizes.empty()) {
        return report;
    }
    const auto& ranges = surrogate.model().ranges;
    report.t_conv = measure_solver_time(params, ranges, cfg, solve);

    std::mt19937_64 rng(cfg.seed + 1);
    for (const std::size_t n : cfg.batch_sizes) {
        const auto batch = random_conditions(n, ranges, rng);
        const auto runs = time_runs(cfg.warmup, cfg.repetitions, [&] {
            const auto s = surrogate.predict(batch);
            g_sink = g_sink + s.front();
        });
        TimingRecord record{"surrogate", n, median_of_means(runs, cfg.groups), cfg.repetitions,
                            static_cast<double>(n) * report.t_conv, 0.0};
        record.speedup = record.baseline_seconds / record.seconds_per_batch;
        report.records.push_back(record);
    }
    return report;
}

TimingReport solver_timing_sweep(const kinetics::KineticParameters& params, const pinn::NormalizationRanges& ranges,
                                 const TimingConfig& cfg, const solver::SolveConfig& solve) {
    cfg.validate();
    TimingReport report;
    if (cfg.batch_sizes.empty()) {
        return report;
    }
    report.t_conv = measure_solver_time(params, ranges, cfg, solve);
    for (const std::size_t n : cfg.batch_sizes) {
        const double seconds = static_cast<double>(n) * report.t_conv;
        report.records.push_back({"solver", n, seconds, cfg.repetitions, seconds, seconds / seconds});
    }
    return report;
}

std::string hardware_description() {
    std::string model = "unknown CPU";
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                model = line.substr(colon + 1);
                model.erase(0, model.find_first_not_of(' '));
            }
            break;
        }
    }
    return model + ", " + std::to_string(std::max(1u, std::thread::hardware_concurrency())) + " logical cores";
}

}  // namespace ftpinn::bench
