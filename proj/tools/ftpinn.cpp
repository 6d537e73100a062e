// Command-line front end: solve, train, eval, bench.
//
// Exit codes: 0 success, 1 usage or input error, 2 partial per-point failure,
// 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftpinn/bench/accuracy.hpp"
#include "ftpinn/bench/report.hpp"
#include "ftpinn/bench/timing.hpp"
#include "ftpinn/conditions_io.hpp"
#include "ftpinn/errors.hpp"
#include "ftpinn/parallel.hpp"
#include "ftpinn/params_io.hpp"
#include "ftpinn/pinn/inference.hpp"
#include "ftpinn/pinn/model_io.hpp"
#include "ftpinn/pinn/trainer.hpp"

namespace {

using namespace ftpinn;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitPartial = 2;
constexpr int kExitNumerical = 3;

// The --model value that selects the conventional solver instead of a file.
constexpr const char* kSolverModel = "solver";

struct Options {
    std::string params;
    std::string conditions;
    std::string config;
    std::string model;
    std::string out;
    std::string dump;
    std::vector<int> rates;
    int grid = 18;
    std::vector<std::size_t> batch_sizes{1, 10, 100, 1000, 10000};
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> precision;
    int repetitions = 30;
};

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::filesystem::path training_log_path(std::filesystem::path model_path) {
    return model_path.replace_extension(".log.csv");
}

pinn::MlpModel load_with_precision(const Options& opt) {
    pinn::MlpModel model = pinn::load_model(opt.model);
    if (opt.precision) {
        model.precision = pinn::parse_precision(*opt.precision);
        if (model.precision == pinn::Precision::Single) {
            model.network = model.network.cast<float>().cast<double>();
        }
    }
    return model;
}

// Configuration checks raise DomainError; on the command line they are input
// errors, not numerical failures.
template <typename Config>
void validate_input(const Config& config) {
    try {
        config.validate();
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
}

void print_errors(const std::vector<bench::ErrorStats>& stats) {
    std::printf("%-11s %12s %12s %12s %10s\n", "quantity", "mean_%", "median_%", "max_%", "count");
    for (const auto& s : stats) {
        std::printf("%-11s %12.4e %12.4e %12.4e %10zu\n", s.quantity.c_str(), s.mean, s.median, s.max, s.count);
    }
}

int run_solve(const Options& opt) {
    const auto params = kinetics::load_parameters(opt.params);
    for (const int n : opt.rates) {
        if (n < 1 || n > params.max_carbon_number) {
            throw FormatError("--rates: carbon number " + std::to_string(n) + " outside 1.." +
                              std::to_string(params.max_carbon_number));
        }
    }
    std::ifstream in(opt.conditions);
    if (!in) {
        throw FormatError("cannot open conditions file " + opt.conditions);
    }
    const auto conditions = solver::read_conditions(in);
    const unsigned threads = opt.threads.value_or(hardware_threads());
    const auto result = solver::solve_batch(params, conditions, {}, threads);

    auto out = open_output(opt.out);
    solver::write_solutions(out, conditions, params, result, opt.rates);
    if (!out) {
        throw Error("failed writing " + opt.out);
    }
    const auto failed = result.failed_indices();
    if (!failed.empty()) {
        std::cerr << failed.size() << " of " << conditions.size() << " point(s) failed; first: row "
                  << failed.front() + 1 << ": " << result.points[failed.front()].error << '\n';
        return kExitPartial;
    }
    return kExitOk;
}

int run_train(const Options& opt) {
    const auto params = kinetics::load_parameters(opt.params);
    pinn::TrainingConfig config = opt.config.empty() ? pinn::TrainingConfig{} : pinn::load_training_config(opt.config);
    if (opt.seed) {
        config.seed = *opt.seed;
    }
    if (opt.precision) {
        config.precision = pinn::parse_precision(*opt.precision);
    }
    validate_input(config);
    const unsigned threads = opt.threads.value_or(1);

    const std::filesystem::path model_path = opt.out;
    const auto log_path = training_log_path(model_path);
    try {
        const auto result = pinn::train(params, config, threads, [](const pinn::TrainingState& s) {
            std::fprintf(stderr, "epoch %lld  loss %.6e  best %.6e  lr %.4e\n", static_cast<long long>(s.epoch),
                         s.loss, s.best_loss, s.learning_rate);
        });
        pinn::save_model(result.model, model_path);
        auto log = open_output(log_path);
        pinn::write_training_log(log, result.log);
        std::printf("best loss %.6e at epoch %lld; model written to %s, log to %s\n", result.best_loss,
                    static_cast<long long>(result.best_epoch), model_path.c_str(), log_path.c_str());
    } catch (const pinn::TrainingError& e) {
        auto snapshot_path = model_path;
        snapshot_path.replace_extension(".snapshot.json");
        pinn::save_model(e.snapshot(), snapshot_path);
        std::cerr << "error: " << e.what() << "; best weights so far written to " << snapshot_path << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

int run_eval(const Options& opt) {
    const auto params = kinetics::load_parameters(opt.params);
    const unsigned threads = opt.threads.value_or(hardware_threads());
    const auto grid = bench::evaluation_grid(opt.grid);

    bench::BenchReport report;
    bench::AccuracyReport accuracy;
    if (opt.model == kSolverModel) {
        accuracy = bench::accuracy_report(bench::oracle_predictor(params, {}, threads), params, {}, grid, {},
                                          threads);
        report.metadata.precision = "double";
    } else {
        const pinn::Surrogate surrogate(load_with_precision(opt));
        accuracy = bench::accuracy_report(surrogate, params, grid, threads);
        report.metadata.precision = pinn::to_string(surrogate.model().precision);
    }
    report.metadata.hardware = bench::hardware_description();
    report.metadata.threads = threads;
    report.metadata.grid_points_per_axis = opt.grid;
    report.metadata.evaluated_points = accuracy.points.size();
    report.metadata.excluded_points = accuracy.excluded.size();
    report.errors = accuracy.stats;

    bench::write_report(report, opt.out, bench::format_for(opt.out));
    if (!opt.dump.empty()) {
        auto dump = open_output(opt.dump);
        bench::write_point_dump(dump, accuracy.points);
    }
    print_errors(report.errors);
    if (!accuracy.excluded.empty()) {
        std::cerr << accuracy.excluded.size() << " grid point(s) excluded: oracle failed; first: "
                  << accuracy.exclusion_reasons.front() << '\n';
        return kExitPartial;
    }
    return kExitOk;
}

int run_bench(const Options& opt) {
    const auto params = kinetics::load_parameters(opt.params);
    bench::TimingConfig cfg;
    cfg.batch_sizes = opt.batch_sizes;
    cfg.repetitions = opt.repetitions;
    cfg.groups = std::min(cfg.groups, opt.repetitions);
    cfg.seed = opt.seed.value_or(0);
    cfg.threads = opt.threads.value_or(1);
    validate_input(cfg);

    bench::BenchReport report;
    bench::TimingReport timing;
    if (opt.model == kSolverModel) {
        timing = bench::solver_timing_sweep(params, {}, cfg);
        report.metadata.precision = "double";
    } else {
        const pinn::Surrogate surrogate(load_with_precision(opt));
        timing = bench::timing_sweep(surrogate, params, cfg);
        report.metadata.precision = pinn::to_string(surrogate.model().precision);
    }
    report.metadata.hardware = bench::hardware_description();
    report.metadata.threads = cfg.threads;
    report.t_conv = timing.t_conv;
    report.timing = timing.records;
    bench::write_report(report, opt.out, bench::format_for(opt.out));

    std::printf("t_conv %.4e s per point\n", timing.t_conv);
    std::printf("%-10s %10s %14s %14s %10s\n", "backend", "batch", "s_per_batch", "baseline_s", "speedup");
    for (const auto& r : timing.records) {
        std::printf("%-10s %10zu %14.4e %14.4e %10.3f\n", r.backend.c_str(), r.batch_size, r.seconds_per_batch,
                    r.baseline_seconds, r.speedup);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fischer-Tropsch site-balance solver and neural surrogate"};
    app.require_subcommand(1);
    Options opt;

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--params", opt.params, "Kinetic parameter JSON")->required();
    };
    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", opt.threads, "Worker thread cap")->check(CLI::PositiveNumber);
    };
    auto add_precision = [&](CLI::App* cmd) {
        cmd->add_option("--precision", opt.precision, "Arithmetic precision")
            ->check(CLI::IsMember({"double", "single"}));
    };

    auto* solve = app.add_subcommand("solve", "Solve the site balance for every row of a conditions CSV");
    add_params(solve);
    solve->add_option("--conditions", opt.conditions, "CSV with p_CO_MPa,p_H2_MPa,p_H2O_MPa,T_K")->required();
    solve->add_option("--out", opt.out, "Output CSV")->required();
    solve->add_option("--rates", opt.rates, "Carbon numbers whose rates are appended, e.g. 1,2,100")
        ->delimiter(',');
    add_threads(solve);

    auto* train = app.add_subcommand("train", "Train a surrogate; writes the model and <model>.log.csv");
    add_params(train);
    train->add_option("--config", opt.config, "Training config JSON (defaults when omitted)");
    train->add_option("--out", opt.out, "Model file to write")->required();
    train->add_option("--seed", opt.seed, "Overrides the config seed");
    add_precision(train);
    add_threads(train);

    auto* eval = app.add_subcommand("eval", "Accuracy of a model against the solver on a uniform grid");
    add_params(eval);
    eval->add_option("--model", opt.model, "Model file, or 'solver' for the oracle itself")->required();
    eval->add_option("--grid", opt.grid, "Points per axis")->check(CLI::PositiveNumber);
    eval->add_option("--out", opt.out, "Report path (.json or .csv)")->required();
    eval->add_option("--dump", opt.dump, "Optional per-point CSV");
    add_precision(eval);
    add_threads(eval);

    auto* bench_cmd = app.add_subcommand("bench", "Surrogate throughput and speedup over the per-point solver");
    add_params(bench_cmd);
    bench_cmd->add_option("--model", opt.model, "Model file, or 'solver' for the identity baseline")->required();
    bench_cmd->add_option("--batch-sizes", opt.batch_sizes, "Batch sizes, e.g. 1,100,10000")->delimiter(',');
    bench_cmd->add_option("--out", opt.out, "Report path (.json or .csv)")->required();
    bench_cmd->add_option("--repetitions", opt.repetitions, "Measured runs per batch size")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", opt.seed, "Seed of the random timing conditions");
    add_precision(bench_cmd);
    add_threads(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) {
            return run_solve(opt);
        }
        if (train->parsed()) {
            return run_train(opt);
        }
        if (eval->parsed()) {
            return run_eval(opt);
        }
        return run_bench(opt);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const BracketError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
