#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpo/losses.hpp"
#include "fpo/policy.hpp"

namespace fpo {

enum class OptimizerAlgorithm { GradientDescent, AdamLike };

struct OptimizerConfig {
    OptimizerAlgorithm algorithm = OptimizerAlgorithm::AdamLike;
    double learning_rate = 0.05;  // tabular-scale default
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_adam = 1e-8;
    std::size_t max_steps = 5000;
    double tolerance = 1e-8;  // stop when gradient inf-norm drops below
    std::uint64_t seed = 0;
    std::size_t log_interval = 10;  // trajectory sampling stride

    void validate() const;
};

// First-order optimizer state over a flat parameter vector.
struct OptimizerState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::size_t step = 0;
};

// theta <- theta - lr * g
void gd_step(const OptimizerConfig& cfg, OptimizerState& state, std::vector<double>& params,
             const std::vector<double>& gradient);

// Bias-corrected Adam update.
void adam_step(const OptimizerConfig& cfg, OptimizerState& state, std::vector<double>& params,
               const std::vector<double>& gradient);

struct TrainReport {
    std::size_t steps_taken = 0;
    std::vector<std::size_t> step_index;
    std::vector<double> loss_trajectory;
    std::vector<double> grad_norm_trajectory;
    std::vector<double> tv_to_optimal_trajectory;  // mean over prompts of TV(pi_hat_theta, pi_hat_star)
    TabularPolicy final_policy;

    double final_loss() const { return loss_trajectory.empty() ? 0.0 : loss_trajectory.back(); }
    double final_tv() const {
        return tv_to_optimal_trajectory.empty() ? 0.0 : tv_to_optimal_trajectory.back();
    }

    std::string to_json() const;
    std::string to_csv() const;  // step,loss,grad_norm,tv_to_optimal
};

// Full-batch optimization of the policy logits against the configured loss.
// When a reward table is supplied, the report tracks mean TV between the
// geometric mixture pi_hat_theta and the reward-tilted pi_hat_star.
TrainReport train(const OptimizerConfig& opt, const LossConfig& cfg, const TabularPolicy& init,
                  const TabularPolicy& ref, const std::optional<RewardTable>& reward,
                  const Batch& data);

}  // namespace fpo
