#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fpo/datagen.hpp"
#include "fpo/generators.hpp"
#include "fpo/losses.hpp"
#include "fpo/policy.hpp"
#include "fpo/trainer.hpp"

namespace fpo {

using Cell = std::variant<std::string, double, std::uint64_t>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    std::string to_json() const;
    std::string render(const std::string& format) const;  // "csv" | "json"
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::size_t num_prompts = 4;
    std::size_t num_responses = 8;
    double reward_scale = 2.0;
    double beta = 0.5;
    double epsilon = 1e-3;
    std::vector<std::string> generators = {"fkl", "rkl", "js", "jeffreys", "alpha:0.5"};
    std::vector<double> alphas = {0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<std::size_t> ks = {2, 8, 32, 128};
    std::size_t num_seeds = 200;      // Monte Carlo repetitions per K
    std::size_t max_steps = 5000;
    double learning_rate = 0.05;
    std::size_t num_preferences = 4000;
    bool init_from_ref = false;  // start training from the reference logits instead of zeros
    bool timing = false;  // real wall-clock in `seconds` columns; off keeps outputs byte-stable
    std::string out;
    std::string format = "csv";
};

// Discretized Gaussian on a fixed grid, probs ~ exp(-(grid-mu)^2/(2 sigma^2)).
struct GridDensityFamily {
    std::vector<double> grid;

    Distribution density(double mu, double log_sigma) const;
};

struct BehaviorFit {
    double mu = 0.0;
    double log_sigma = 0.0;
    double loss = 0.0;
};

// Minimizes D_f(family(mu, log_sigma) || target) from one start.
BehaviorFit fit_density(const Generator& gen, const GridDensityFamily& family,
                        const Distribution& target, double mu0, double log_sigma0);

// Per generator: train to the exact optimum on full-support reward data and
// report final TV distances.
ResultTable run_theorem1(const ExperimentConfig& cfg);

// Per (generator, K): median absolute error of the K-sample Monte Carlo
// estimate against the exact divergence, across seeds.
ResultTable run_theorem2(const ExperimentConfig& cfg);

// DPO / EXO / alpha-endpoint / affine-invariance equivalence gaps.
ResultTable run_equivalence(const ExperimentConfig& cfg);

// Train on BT preference data per alpha; final loss, TV, and BT win-proxy.
ResultTable run_alpha_sweep(const ExperimentConfig& cfg);

// Fit a single discretized Gaussian to a bimodal target per generator and
// report the mass in each mode basin.
ResultTable run_divergence_behavior(const ExperimentConfig& cfg);

// Generator validity sweep over a log grid.
ResultTable run_generator_check(const ExperimentConfig& cfg);

// Exact BT win probability of policy samples against reference samples.
double win_proxy(const TabularPolicy& policy, const SyntheticTask& task);

int cli_main(int argc, char** argv);

}  // namespace fpo
