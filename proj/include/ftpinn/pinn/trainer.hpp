#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "ftpinn/errors.hpp"
#include "ftpinn/kinetics.hpp"
#include "ftpinn/pinn/mlp.hpp"
#include "ftpinn/pinn/normalization.hpp"

namespace ftpinn::pinn {

/// Training hyperparameters. Defaults are the desk-scale setup: a 128x2
/// network and 50k epochs, with the remaining values from the reference
/// configuration (10k samples, full batch, lr 1e-3, inverse-time decay 0.01
/// every 100 epochs, residual resampling every epoch, double precision).
struct TrainingConfig {
    std::vector<int> hidden_layers{128, 128};
    std::size_t n_train = 10000;
    std::size_t batch_size = 10000;
    std::int64_t epochs = 50000;
    double lr0 = 1e-3;
    double decay_rate = 0.01;
    std::int64_t decay_steps = 100;
    std::uint64_t seed = 0;
    bool resample = true;
    std::size_t resample_pool_factor = 10;
    /// Log cadence in epochs; the last epoch is always logged.
    std::int64_t log_every = 100;
    Precision precision = Precision::Double;
    NormalizationRanges ranges;

    void validate() const;
};

TrainingConfig parse_training_config(const std::string& json_text);
TrainingConfig load_training_config(const std::filesystem::path& path);
std::string dump_training_config(const TrainingConfig& config);

struct LogEntry {
    std::int64_t epoch = 0;
    double loss = 0.0;
    double learning_rate = 0.0;
};

/// Observable state of a run, handed to the progress callback.
struct TrainingState {
    std::int64_t epoch = 0;
    double loss = std::numeric_limits<double>::infinity();
    double best_loss = std::numeric_limits<double>::infinity();
    std::int64_t best_epoch = -1;
    double learning_rate = 0.0;
};

struct TrainingResult {
    /// Weights at the epoch with the lowest training loss (the initial
    /// weights when no epoch ran).
    MlpModel model;
    std::vector<LogEntry> log;
    double best_loss = std::numeric_limits<double>::infinity();
    std::int64_t best_epoch = -1;
    /// The training batch of the best epoch; the returned model's loss on it
    /// equals best_loss.
    PointBatch best_batch;
};

/// Raised when the loss stops being finite. Carries the best weights seen
/// before the failure.
class TrainingError : public Error {
  public:
    TrainingError(const std::string& what, std::int64_t epoch, MlpModel snapshot)
        : Error(what), epoch_(epoch), snapshot_(std::move(snapshot)) {}

    std::int64_t epoch() const noexcept { return epoch_; }
    const MlpModel& snapshot() const noexcept { return snapshot_; }

  private:
    std::int64_t epoch_;
    MlpModel snapshot_;
};

/// Seed of the sampling stream of a run; weight initialization uses the
/// config seed itself, so the two streams never overlap.
std::uint64_t sampling_seed(std::uint64_t seed);

using ProgressCallback = std::function<void(const TrainingState&)>;

/// Runs `config.epochs` epochs of {draw batch, loss, gradients, Adam step}.
/// The trajectory is a pure function of (params, config); `threads` only
/// splits per-point work and does not change any result.
TrainingResult train(const kinetics::KineticParameters& params, const TrainingConfig& config,
                     unsigned threads = 1, const ProgressCallback& progress = {});

/// CSV `epoch,loss,lr`.
void write_training_log(std::ostream& out, const std::vector<LogEntry>& log);

}  // namespace ftpinn::pinn
