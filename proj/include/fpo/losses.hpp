#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpo/generators.hpp"
#include "fpo/policy.hpp"

namespace fpo {

struct PairwiseRecord {
    std::size_t prompt = 0;
    std::size_t winner = 0;
    std::size_t loser = 0;
    std::optional<double> reward_w;
    std::optional<double> reward_l;
};

// Preference records (x, y_w, y_l), optionally carrying reward values.
struct PairwiseBatch {
    std::vector<PairwiseRecord> records;

    void validate(std::size_t num_prompts, std::size_t num_responses) const;
    std::string to_jsonl() const;
    static PairwiseBatch from_jsonl(const std::string& text);
};

struct KSampleRecord {
    std::size_t prompt = 0;
    std::vector<std::size_t> responses;
    std::vector<double> rewards;
};

// Reward-labeled records with K completions per prompt.
struct KSampleBatch {
    std::vector<KSampleRecord> records;

    void validate(std::size_t num_prompts, std::size_t num_responses) const;
    std::string to_jsonl() const;
    static KSampleBatch from_jsonl(const std::string& text);
};

using Batch = std::variant<PairwiseBatch, KSampleBatch>;

enum class LossVariant { GeneralK, PairwiseReward, PairwiseSmoothed, SimPOStyle };

std::string variant_name(LossVariant v);
LossVariant parse_variant(const std::string& name);

struct LossConfig {
    Generator generator = Generator::reverse_kl();
    double beta = 0.5;       // scale of the log ratio g = beta*(log pi - log ref)
    double epsilon = 1e-3;   // label smoothing; epsilon = 0 selects the DPO limit path (ReverseKL only)
    LossVariant variant = LossVariant::PairwiseSmoothed;
    double gamma = 0.0;      // target margin, SimPOStyle only
    double reward_temperature = 1.0;  // scales rewards before the K-sample softmax
    bool sum_reduction = false;       // mean over records by default

    void validate() const;
    std::string to_json() const;
    static LossConfig from_json(const std::string& text);
};

struct LossValue {
    double loss = 0.0;
    std::size_t num_prompts = 0;
    std::size_t num_responses = 0;
    std::vector<double> gradient;  // d loss / d policy logits, row-major

    double grad(std::size_t x, std::size_t y) const { return gradient[x * num_responses + y]; }
    double grad_inf_norm() const;
};

// K-sample objective: per record, w = softmax(temperature * rewards),
// v = softmax(g) over the K responses, loss = sum_i w_i f(v_i / w_i).
LossValue fpo_loss_general(const LossConfig& cfg, const TabularPolicy& policy,
                           const TabularPolicy& ref, const KSampleBatch& batch);

// Pairwise with reward labels: p = sigma(r_w - r_l),
// loss = p f(sigma(d)/p) + (1-p) f(sigma(-d)/(1-p)) with d the g-odds.
LossValue fpo_loss_pairwise_reward(const LossConfig& cfg, const TabularPolicy& policy,
                                   const TabularPolicy& ref, const PairwiseBatch& batch);

// Label-smoothed pairwise: loss = (1-eps) f(sigma(d)/(1-eps)) + eps f(sigma(-d)/eps).
// With cfg.variant == SimPOStyle the g-odds are replaced by the reference-free
// length-normalized margin.
LossValue fpo_loss_pairwise_smoothed(const LossConfig& cfg, const TabularPolicy& policy,
                                     const TabularPolicy& ref, const PairwiseBatch& batch);

// Reference oracle: mean of -ln sigma(d).
LossValue dpo_loss(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   const PairwiseBatch& batch);

// Reference oracle: mean of sigma(d) ln(sigma(d)/(1-eps)) + sigma(-d) ln(sigma(-d)/eps).
LossValue exo_loss(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   double epsilon, const PairwiseBatch& batch);

// beta/|y_w| * log pi(y_w|x) - beta/|y_l| * log pi(y_l|x) - gamma.
double simpo_style_delta(const TabularPolicy& policy, double beta, double gamma,
                         std::size_t prompt, std::size_t winner, std::size_t loser);

// Dispatch on cfg.variant / batch type.
LossValue evaluate_loss(const LossConfig& cfg, const TabularPolicy& policy,
                        const TabularPolicy& ref, const Batch& batch);

struct GradCheckReport {
    double worst_rel_error = 0.0;
    double grad_inf_norm = 0.0;
};

// Central finite differences of the scalar loss against the analytic
// gradient for every logit of every prompt touched by the batch.
GradCheckReport loss_gradient_check(const LossConfig& cfg, const TabularPolicy& policy,
                                    const TabularPolicy& ref, const Batch& batch, double h = 1e-5);

}  // namespace fpo
