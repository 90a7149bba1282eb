// spikelab: predict spectral outliers of spiked invariant matrix models,
// simulate the models, and verify predictions against sampled spectra.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "spikelab/analysis.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/outliers.hpp"
#include "spikelab/rmt.hpp"
#include "spikelab/serialize.hpp"

namespace {

using namespace spikelab;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNumerical = 4;

int thread_cap() {
    if (const char* env = std::getenv("SPIKELAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Trial-level fan-out; results land in a preallocated slot per trial, so the
// output order is independent of scheduling.
template <typename Fn>
void for_each_trial(int trials, Fn&& fn) {
    int workers = std::min(thread_cap(), trials);
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int trials = -1;
    bool quiet = false;
};

ExperimentConfig load_with_overrides(const CliOptions& opt) {
    ExperimentConfig cfg = load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.trials > 0) cfg.trials = opt.trials;
    return cfg;
}

PredictionSet run_prediction(const ExperimentConfig& cfg) {
    SubordinationPair sp = cfg.make_pair();
    SpikeSchedule a = cfg.make_schedule_a();
    SpikeSchedule b = cfg.make_schedule_b();
    if (cfg.model == ConvolutionType::AdditiveReal)
        return predict_outliers(a, b, sp, cfg.eps_cut);
    return predict_outliers_multiplicative(a, b, sp, cfg.eps_cut);
}

json prediction_document(const ExperimentConfig& cfg, const PredictionSet& ps) {
    return {{"model", config_to_json(cfg)["model"]},
            {"support", support_to_json(ps.K)},
            {"eps_cut", cfg.eps_cut},
            {"predictions", predictions_to_json(ps.predictions)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

int cmd_predict(const CliOptions& opt) {
    ExperimentConfig cfg = load_with_overrides(opt);
    PredictionSet ps = run_prediction(cfg);
    json doc = prediction_document(cfg, ps);
    std::filesystem::create_directories(cfg.out_dir);
    write_text(std::filesystem::path(cfg.out_dir) / "predictions.json", doc.dump(2) + "\n");
    if (!opt.quiet) std::cout << doc.dump(2) << "\n";
    return kExitPass;
}

void simulate_one_n(const ExperimentConfig& cfg, int n, bool quiet) {
    ModelSpec spec = cfg.make_model_spec(n);
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<SimulationRun> runs(static_cast<std::size_t>(cfg.trials));
    for_each_trial(cfg.trials, [&](int t) {
        runs[static_cast<std::size_t>(t)] = run_model(spec, static_cast<std::uint64_t>(t));
    });
    for (int t = 0; t < cfg.trials; ++t) {
        const auto& run = runs[static_cast<std::size_t>(t)];
        auto stem = "n" + std::to_string(n) + "_t" + std::to_string(t);
        std::ofstream eig(std::filesystem::path(cfg.out_dir) / ("eigenvalues_" + stem + ".csv"));
        write_eigenvalue_csv(eig, run.eigenvalues);
        std::ofstream hist(std::filesystem::path(cfg.out_dir) / ("histogram_" + stem + ".csv"));
        write_histogram_csv(hist, histogram(run.eigenvalues, 0.1));
        if (!quiet)
            std::cout << "simulated n=" << n << " trial=" << t << " ("
                      << run.wall_time_seconds << " s)\n";
    }
}

int cmd_simulate(const CliOptions& opt) {
    ExperimentConfig cfg = load_with_overrides(opt);
    for (int n : cfg.n_values) simulate_one_n(cfg, n, opt.quiet);
    return kExitPass;
}

json verify_one_n(const ExperimentConfig& cfg, const PredictionSet& ps, int n, bool* all_pass) {
    ModelSpec spec = cfg.make_model_spec(n);
    double eps = cfg.window;
    for (const auto& p : ps.predictions) eps = std::min(eps, std::nextafter(p.window, 0.0));
    std::vector<VerificationReport> reports(static_cast<std::size_t>(cfg.trials));
    for_each_trial(cfg.trials, [&](int t) {
        SimulationRun run = run_model(spec, static_cast<std::uint64_t>(t));
        reports[static_cast<std::size_t>(t)] =
            verify_run(run, ps.predictions, ps.K, eps);
    });
    TrialAggregate agg = aggregate_reports(reports);
    bool pass = agg.inclusion_pass_fraction >= 0.9;
    for (double f : agg.window_pass_fraction) pass = pass && f >= 0.9;
    *all_pass = *all_pass && pass;
    json per_trial = json::array();
    for (const auto& r : reports) per_trial.push_back(report_to_json(r));
    json fractions = json::array();
    for (double f : agg.window_pass_fraction) fractions.push_back(f);
    return {{"n", n},
            {"trials", cfg.trials},
            {"epsilon", eps},
            {"window_pass_fraction", fractions},
            {"inclusion_pass_fraction", agg.inclusion_pass_fraction},
            {"pass", pass},
            {"per_trial", per_trial}};
}

int cmd_verify(const CliOptions& opt, bool sweep) {
    ExperimentConfig cfg = load_with_overrides(opt);
    PredictionSet ps = run_prediction(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    bool all_pass = true;
    json per_n = json::array();
    std::vector<int> sizes = cfg.n_values;
    if (!sweep && sizes.size() > 1) sizes = {sizes.back()};
    for (int n : sizes) {
        per_n.push_back(verify_one_n(cfg, ps, n, &all_pass));
        if (sweep) simulate_one_n(cfg, n, /*quiet=*/true);
    }
    json doc = {{"predictions", predictions_to_json(ps.predictions)},
                {"support", support_to_json(ps.K)},
                {"results", per_n},
                {"pass", all_pass}};
    write_text(std::filesystem::path(cfg.out_dir) / (sweep ? "sweep.json" : "verify.json"),
               doc.dump(2) + "\n");
    if (!opt.quiet) std::cout << doc.dump(2) << "\n";
    return all_pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    Eigen::setNbThreads(thread_cap());
    CLI::App app{"Outlier prediction and Monte Carlo verification for spiked "
                 "invariant random matrix models"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string mode;
    for (const char* name : {"predict", "simulate", "verify", "sweep"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", opt.seed, "RNG seed (overrides config)");
        sub->add_option("--trials", opt.trials, "trial count (overrides config)");
        sub->add_flag("--quiet", opt.quiet, "suppress stdout reports");
        sub->callback([&mode, name] { mode = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (mode == "predict") return cmd_predict(opt);
        if (mode == "simulate") return cmd_simulate(opt);
        if (mode == "verify") return cmd_verify(opt, /*sweep=*/false);
        return cmd_verify(opt, /*sweep=*/true);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IterationFailure& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const BoundaryExtensionError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const PoleError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
