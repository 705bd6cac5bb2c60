#include "fpo/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fpo/errors.hpp"
#include "fpo/random.hpp"

namespace fpo {

namespace {

std::vector<double> tempered_probs(const TabularPolicy& ref, std::size_t prompt,
                                   double temperature) {
    auto row = policy_log_distribution(ref, prompt);
    if (temperature != 1.0) {
        if (!(temperature > 0.0)) throw ConfigError("sampling temperature must be positive");
        for (double& v : row) v /= temperature;
    }
    return softmax(row);
}

// One draw without replacement by renormalizing after each pick.
std::size_t draw_excluding(Rng& rng, std::vector<double> probs,
                           const std::vector<std::size_t>& taken) {
    double remaining = 1.0;
    for (std::size_t t : taken) {
        remaining -= probs[t];
        probs[t] = 0.0;
    }
    for (double& p : probs) p /= remaining;
    std::size_t pick = rng.categorical(probs);
    while (probs[pick] == 0.0) pick = (pick + 1) % probs.size();  // guard against rounding
    return pick;
}

}  // namespace

std::string SyntheticTask::to_json() const {
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", beta_star);
    out << "{\"ref\":" << ref.to_json() << ",\"reward\":" << reward.to_json()
        << ",\"beta_star\":" << buf << "}";
    return out.str();
}

SyntheticTask SyntheticTask::from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    SyntheticTask task;
    task.ref = TabularPolicy::from_json(doc.at("ref").dump());
    task.reward = RewardTable::from_json(doc.at("reward").dump());
    task.beta_star = doc.at("beta_star").get<double>();
    task.reward.num_prompts = task.ref.num_prompts;
    task.reward.num_responses = task.ref.num_responses;
    return task;
}

SyntheticTask make_synthetic_task(std::uint64_t seed, std::size_t num_prompts,
                                  std::size_t num_responses, double beta_star,
                                  double reward_scale) {
    if (num_prompts < 1 || num_responses < 2)
        throw ConfigError("make_synthetic_task: need at least 1 prompt and 2 responses");
    if (!(reward_scale >= 0.0)) throw ConfigError("make_synthetic_task: negative reward_scale");
    if (!(beta_star > 0.0)) throw ConfigError("make_synthetic_task: beta_star must be positive");

    Rng rng(seed);
    SyntheticTask task;
    task.beta_star = beta_star;
    task.ref = TabularPolicy::zeros(num_prompts, num_responses);
    for (double& v : task.ref.logits) v = rng.normal();
    for (std::size_t& l : task.ref.lengths) l = 1 + rng.index(16);
    task.reward.num_prompts = num_prompts;
    task.reward.num_responses = num_responses;
    task.reward.values.resize(num_prompts * num_responses);
    for (double& r : task.reward.values)
        r = reward_scale == 0.0 ? 0.0 : rng.uniform(-reward_scale, reward_scale);
    return task;
}

PairwiseBatch sample_preferences(const SyntheticTask& task, std::size_t n, std::uint64_t seed,
                                 double temperature) {
    if (n < 1) throw ConfigError("sample_preferences: n must be >= 1");
    Rng rng(seed);
    PairwiseBatch batch;
    batch.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PairwiseRecord rec;
        rec.prompt = rng.index(task.ref.num_prompts);
        const auto probs = tempered_probs(task.ref, rec.prompt, temperature);
        const std::size_t a = rng.categorical(probs);
        const std::size_t b = draw_excluding(rng, probs, {a});
        const double ra = task.reward(rec.prompt, a);
        const double rb = task.reward(rec.prompt, b);
        const bool a_wins = rng.uniform() < sigmoid(ra - rb);
        rec.winner = a_wins ? a : b;
        rec.loser = a_wins ? b : a;
        batch.records.push_back(rec);
    }
    return batch;
}

KSampleBatch sample_reward_dataset(const SyntheticTask& task, std::size_t n, std::size_t k,
                                   std::uint64_t seed, bool full_support, double temperature) {
    const std::size_t num_responses = task.ref.num_responses;
    if (full_support) k = num_responses;
    if (k < 2 || k > num_responses)
        throw ConfigError("sample_reward_dataset: K must lie in [2, num_responses]");

    Rng rng(seed);
    KSampleBatch batch;
    batch.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        KSampleRecord rec;
        rec.prompt = full_support ? i % task.ref.num_prompts : rng.index(task.ref.num_prompts);
        if (full_support) {
            for (std::size_t y = 0; y < num_responses; ++y) rec.responses.push_back(y);
        } else {
            const auto probs = tempered_probs(task.ref, rec.prompt, temperature);
            for (std::size_t j = 0; j < k; ++j)
                rec.responses.push_back(draw_excluding(rng, probs, rec.responses));
        }
        for (std::size_t y : rec.responses) rec.rewards.push_back(task.reward(rec.prompt, y));
        batch.records.push_back(rec);
    }
    return batch;
}

}  // namespace fpo
