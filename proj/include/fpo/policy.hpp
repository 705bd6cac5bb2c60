#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fpo/generators.hpp"

namespace fpo {

// Probability vector over a finite support.
struct Distribution {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }

    // Throws DomainError unless probs are nonnegative and sum to 1 within 1e-12.
    void validate() const;
};

// Logits over a finite response set per prompt, plus synthetic token
// lengths (used only by the SimPO-style variant).
struct TabularPolicy {
    std::size_t num_prompts = 0;
    std::size_t num_responses = 0;
    std::vector<double> logits;        // row-major [num_prompts x num_responses]
    std::vector<std::size_t> lengths;  // same shape, all >= 1

    static TabularPolicy zeros(std::size_t prompts, std::size_t responses);

    double& logit(std::size_t x, std::size_t y) { return logits[x * num_responses + y]; }
    double logit(std::size_t x, std::size_t y) const { return logits[x * num_responses + y]; }
    std::size_t length(std::size_t x, std::size_t y) const { return lengths[x * num_responses + y]; }

    bool same_shape(const TabularPolicy& other) const {
        return num_prompts == other.num_prompts && num_responses == other.num_responses;
    }

    // Throws ShapeError / DomainError on inconsistent sizes, non-finite
    // logits, or zero lengths.
    void validate() const;

    std::string to_json() const;
    static TabularPolicy from_json(const std::string& text);
};

// Ground-truth reward table r(x, y).
struct RewardTable {
    std::size_t num_prompts = 0;
    std::size_t num_responses = 0;
    std::vector<double> values;  // row-major

    double operator()(std::size_t x, std::size_t y) const { return values[x * num_responses + y]; }
    double& at(std::size_t x, std::size_t y) { return values[x * num_responses + y]; }

    void validate() const;

    std::string to_json() const;
    static RewardTable from_json(const std::string& text);
};

// softmax(logits[prompt]) with max-subtraction.
Distribution policy_distribution(const TabularPolicy& policy, std::size_t prompt);

// log-softmax row for a prompt.
std::vector<double> policy_log_distribution(const TabularPolicy& policy, std::size_t prompt);

// Normalized distribution proportional to policy^beta * ref^(1-beta).
Distribution geometric_mixture(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                               std::size_t prompt);

// The exact KL-regularized optimum: normalize(ref * exp(r/beta)).
// With hatted = true, returns normalize(ref * exp(r)) instead.
Distribution optimal_policy(const TabularPolicy& ref, const RewardTable& reward, double beta,
                            std::size_t prompt, bool hatted = false);

// beta * (log pi_theta(y|x) - log pi_ref(y|x)) with log-softmax log-probs.
double log_ratio_g(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   std::size_t prompt, std::size_t response);

// Sum_i q_i * f(p_i / q_i). Follows the argument order D_f(p||q) = E_q[f(p/q)].
double exact_f_divergence(const Generator& gen, const Distribution& p, const Distribution& q);

// (1/2) * Sum |p_i - q_i|.
double tv_distance(const Distribution& p, const Distribution& q);

// Numerically stable helpers shared across modules.
std::vector<double> softmax(const std::vector<double>& logits);
std::vector<double> log_softmax(const std::vector<double>& logits);
double log_sigmoid(double x);  // -softplus(-x)
double sigmoid(double x);

}  // namespace fpo
