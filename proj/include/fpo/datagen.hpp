#pragma once

#include <cstdint>
#include <string>

#include "fpo/losses.hpp"
#include "fpo/policy.hpp"

namespace fpo {

// Reference policy plus ground-truth reward table; beta_star defines the
// exact optimum used for evaluation.
struct SyntheticTask {
    TabularPolicy ref;
    RewardTable reward;
    double beta_star = 0.5;

    std::string to_json() const;
    static SyntheticTask from_json(const std::string& text);
};

// Reference logits ~ N(0,1), rewards ~ U[-reward_scale, reward_scale];
// deterministic given the seed.
SyntheticTask make_synthetic_task(std::uint64_t seed, std::size_t num_prompts,
                                  std::size_t num_responses, double beta_star,
                                  double reward_scale);

// Bradley-Terry preference sampling: prompt uniform, two distinct responses
// from pi_ref (optionally tempered), winner ~ Bernoulli(sigma(r_a - r_b)).
// Records carry no reward values.
PairwiseBatch sample_preferences(const SyntheticTask& task, std::size_t n, std::uint64_t seed,
                                 double temperature = 1.0);

// K distinct responses per record, sampled without replacement with pi_ref
// probabilities, each paired with its exact reward. With full_support, every
// record enumerates all responses instead.
KSampleBatch sample_reward_dataset(const SyntheticTask& task, std::size_t n, std::size_t k,
                                   std::uint64_t seed, bool full_support = false,
                                   double temperature = 1.0);

}  // namespace fpo
