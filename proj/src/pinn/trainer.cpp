#include "ftpinn/pinn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ftpinn/csv.hpp"
#include "ftpinn/pinn/adam.hpp"
#include "ftpinn/pinn/physics_loss.hpp"
#include "ftpinn/pinn/sampling.hpp"

namespace ftpinn::pinn {
namespace {

using nlohmann::json;

template <typename T>
TrainingResult run(const kinetics::KineticParameters& params, const TrainingConfig& config, unsigned threads,
                   const ProgressCallback& progress) {
    MlpModel model = make_model(config.hidden_layers, config.ranges, config.precision);
    init_weights(model, config.seed);

    TrainingResult result;
    result.model = model;
    if (config.epochs == 0) {
        return result;
    }

    Network<T> net = model.network.template cast<T>();
    Network<T> best = net;
    AdamState<T> adam = AdamState<T>::zeros_like(net);
    Rng rng(sampling_seed(config.seed));

    const std::size_t pool_size = config.n_train * config.resample_pool_factor;
    SamplePool pool;
    if (config.resample) {
        refresh_pool(pool, pool_size, rng);
    }

    TrainingState state;
    for (std::int64_t epoch = 0; epoch < config.epochs; ++epoch) {
        DrawnBatch batch;
        if (config.resample) {
            batch = resample_with<T>(pool, net, params, config.ranges, config.batch_size, rng, threads);
        } else {
            batch.points = uniform_points(config.batch_size, rng);
            batch.kinetics = KineticsBatch::prepare(params, batch.points, config.ranges);
        }

        Network<T> gradients;
        const Matrix<T> inputs = batch.points.template cast<T>();
        const double loss = evaluate_physics_loss<T>(net, inputs, batch.kinetics, &gradients, nullptr, threads);
        if (!std::isfinite(loss)) {
            MlpModel snapshot = model;
            snapshot.network = best.template cast<double>();
            throw TrainingError("training loss became non-finite at epoch " + std::to_string(epoch), epoch,
                                std::move(snapshot));
        }

        state.epoch = epoch;
        state.loss = loss;
        state.learning_rate = inverse_time_decay(config.lr0, config.decay_rate,
                                                 static_cast<double>(config.decay_steps), epoch);
        if (loss < state.best_loss) {
            state.best_loss = loss;
            state.best_epoch = epoch;
            best = net;
            result.best_batch = batch.points;
        }
        if (epoch % config.log_every == 0 || epoch + 1 == config.epochs) {
            result.log.push_back({epoch, loss, state.learning_rate});
            if (progress) {
                progress(state);
            }
        }
        adam_step(net, gradients, adam, state.learning_rate);
    }

    result.model.network = best.template cast<double>();
    result.best_loss = state.best_loss;
    result.best_epoch = state.best_epoch;
    return result;
}

template <typename U>
U read_field(const json& obj, const char* key, U fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    try {
        return it->get<U>();
    } catch (const json::exception&) {
        throw FormatError(std::string("training config: field '") + key + "' has the wrong type");
    }
}

}  // namespace

std::uint64_t sampling_seed(std::uint64_t seed) {
    return seed ^ 0x9E3779B97F4A7C15ULL;
}

void TrainingConfig::validate() const {
    if (hidden_layers.empty()) {
        throw DomainError("training config: at least one hidden layer is required");
    }
    for (const int width : hidden_layers) {
        if (width < 1) {
            throw DomainError("training config: hidden widths must be positive");
        }
    }
    if (n_train < 1 || batch_size < 1) {
        throw DomainError("training config: n_train and batch_size must be positive");
    }
    if (resample_pool_factor < 1) {
        throw DomainError("training config: resample_pool_factor must be at least 1");
    }
    if (batch_size > n_train * resample_pool_factor) {
        throw DomainError("training config: batch_size must not exceed n_train * resample_pool_factor");
    }
    if (epochs < 0) {
        throw DomainError("training config: epochs must be non-negative");
    }
    if (!(lr0 > 0.0) || !(decay_rate >= 0.0) || decay_steps < 1) {
        throw DomainError("training config: need lr0 > 0, decay_rate >= 0, decay_steps >= 1");
    }
    if (log_every < 1) {
        throw DomainError("training config: log_every must be at least 1");
    }
    ranges.validate();
}

TrainingConfig parse_training_config(const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("training config: malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw FormatError("training config: top level must be a JSON object");
    }
    static const char* const known[] = {"hidden_layers", "n_train",    "batch_size", "epochs",
                                        "lr0",           "decay_rate", "decay_steps", "seed",
                                        "resample",      "resample_pool_factor", "log_every", "precision",
                                        "ranges"};
    for (const auto& [key, value] : obj.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw FormatError("training config: unknown field '" + key + "'");
        }
    }

    TrainingConfig cfg;
    cfg.hidden_layers = read_field(obj, "hidden_layers", cfg.hidden_layers);
    cfg.n_train = read_field(obj, "n_train", cfg.n_train);
    cfg.batch_size = read_field(obj, "batch_size", cfg.batch_size);
    cfg.epochs = read_field(obj, "epochs", cfg.epochs);
    cfg.lr0 = read_field(obj, "lr0", cfg.lr0);
    cfg.decay_rate = read_field(obj, "decay_rate", cfg.decay_rate);
    cfg.decay_steps = read_field(obj, "decay_steps", cfg.decay_steps);
    cfg.seed = read_field(obj, "seed", cfg.seed);
    cfg.resample = read_field(obj, "resample", cfg.resample);
    cfg.resample_pool_factor = read_field(obj, "resample_pool_factor", cfg.resample_pool_factor);
    cfg.log_every = read_field(obj, "log_every", cfg.log_every);
    cfg.precision = parse_precision(read_field<std::string>(obj, "precision", to_string(cfg.precision)));
    if (const auto it = obj.find("ranges"); it != obj.end()) {
        if (!it->is_object()) {
            throw FormatError("training config: 'ranges' must be an object");
        }
        cfg.ranges.p_co_max = read_field(*it, "p_CO_max", cfg.ranges.p_co_max);
        cfg.ranges.p_h2_max = read_field(*it, "p_H2_max", cfg.ranges.p_h2_max);
        cfg.ranges.p_h2o_max = read_field(*it, "p_H2O_max", cfg.ranges.p_h2o_max);
        cfg.ranges.t_min = read_field(*it, "T_min", cfg.ranges.t_min);
        cfg.ranges.t_max = read_field(*it, "T_max", cfg.ranges.t_max);
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
    return cfg;
}

TrainingConfig load_training_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open training config " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_training_config(buffer.str());
}

std::string dump_training_config(const TrainingConfig& config) {
    json obj = {
        {"hidden_layers", config.hidden_layers},
        {"n_train", config.n_train},
        {"batch_size", config.batch_size},
        {"epochs", config.epochs},
        {"lr0", config.lr0},
        {"decay_rate", config.decay_rate},
        {"decay_steps", config.decay_steps},
        {"seed", config.seed},
        {"resample", config.resample},
        {"resample_pool_factor", config.resample_pool_factor},
        {"log_every", config.log_every},
        {"precision", to_string(config.precision)},
        {"ranges",
         {{"p_CO_max", config.ranges.p_co_max},
          {"p_H2_max", config.ranges.p_h2_max},
          {"p_H2O_max", config.ranges.p_h2o_max},
          {"T_min", config.ranges.t_min},
          {"T_max", config.ranges.t_max}}},
    };
    return obj.dump(2);
}

TrainingResult train(const kinetics::KineticParameters& params, const TrainingConfig& config, unsigned threads,
                     const ProgressCallback& progress) {
    params.validate();
    config.validate();
    if (config.precision == Precision::Single) {
        return run<float>(params, config, threads, progress);
    }
    return run<double>(params, config, threads, progress);
}

void write_training_log(std::ostream& out, const std::vector<LogEntry>& log) {
    out << "epoch,loss,lr\n";
    for (const auto& entry : log) {
        out << entry.epoch << ',' << csv::format_double(entry.loss) << ','
            << csv::format_double(entry.learning_rate) << '\n';
    }
}

}  // namespace ftpinn::pinn
