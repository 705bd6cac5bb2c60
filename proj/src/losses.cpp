#include "fpo/losses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fpo/errors.hpp"

namespace fpo {

namespace {

constexpr double kRewardClamp = 1e-12;

struct ScalarLoss {
    double value = 0.0;
    double ddelta = 0.0;  // derivative with respect to the margin
};

// p f(sigma(d)/p) + (1-p) f(sigma(-d)/(1-p)) for a general weight p in (0,1).
ScalarLoss weighted_pair_loss(const Generator& gen, double p, double delta) {
    const double s1 = sigmoid(delta);
    const double s2 = sigmoid(-delta);
    const double u1 = s1 / p;
    const double u2 = s2 / (1.0 - p);
    ScalarLoss out;
    out.value = p * gen.eval(u1) + (1.0 - p) * gen.eval(u2);
    out.ddelta = s1 * s2 * (gen.derivative(u1) - gen.derivative(u2));
    return out;
}

// Label-smoothed pair loss; epsilon = 0 selects the exact DPO limit path.
ScalarLoss smoothed_pair_loss(const Generator& gen, double epsilon, double delta) {
    if (epsilon == 0.0) {
        // Losing-label term and entropy constants vanish in the limit;
        // only ReverseKL admits it (other generators diverge as eps -> 0).
        ScalarLoss out;
        out.value = -log_sigmoid(delta);
        out.ddelta = -sigmoid(-delta);
        return out;
    }
    return weighted_pair_loss(gen, 1.0 - epsilon, delta);
}

// Accumulates per-record gradients and applies the batch reduction.
struct Accumulator {
    explicit Accumulator(const TabularPolicy& policy) {
        value.num_prompts = policy.num_prompts;
        value.num_responses = policy.num_responses;
        value.gradient.assign(policy.logits.size(), 0.0);
    }

    void finalize(std::size_t n, bool sum_reduction) {
        if (n == 0) return;
        if (!sum_reduction) {
            const double inv = 1.0 / static_cast<double>(n);
            value.loss *= inv;
            for (double& g : value.gradient) g *= inv;
        }
    }

    LossValue value;
};

struct LogRows {
    std::vector<std::vector<double>> policy_logp;
    std::vector<std::vector<double>> policy_p;
    std::vector<std::vector<double>> ref_logp;
};

LogRows precompute_rows(const TabularPolicy& policy, const TabularPolicy& ref) {
    if (!policy.same_shape(ref)) throw ShapeError("loss: policy/ref shape mismatch");
    LogRows rows;
    rows.policy_logp.resize(policy.num_prompts);
    rows.policy_p.resize(policy.num_prompts);
    rows.ref_logp.resize(policy.num_prompts);
    for (std::size_t x = 0; x < policy.num_prompts; ++x) {
        rows.policy_logp[x] = policy_log_distribution(policy, x);
        rows.policy_p[x] = policy_distribution(policy, x).probs;
        rows.ref_logp[x] = policy_log_distribution(ref, x);
    }
    return rows;
}

void check_record(const PairwiseRecord& rec, std::size_t num_prompts, std::size_t num_responses) {
    if (rec.prompt >= num_prompts) throw IndexError("pairwise record: prompt out of range");
    if (rec.winner >= num_responses || rec.loser >= num_responses)
        throw IndexError("pairwise record: response out of range");
    if (rec.winner == rec.loser) throw DomainError("pairwise record: winner equals loser");
}

}  // namespace

void PairwiseBatch::validate(std::size_t num_prompts, std::size_t num_responses) const {
    for (const auto& rec : records) check_record(rec, num_prompts, num_responses);
}

std::string PairwiseBatch::to_jsonl() const {
    std::ostringstream out;
    for (const auto& rec : records) {
        out << "{\"x\":" << rec.prompt << ",\"yw\":" << rec.winner << ",\"yl\":" << rec.loser;
        if (rec.reward_w && rec.reward_l) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", *rec.reward_w);
            out << ",\"rw\":" << buf;
            std::snprintf(buf, sizeof(buf), "%.17g", *rec.reward_l);
            out << ",\"rl\":" << buf;
        }
        out << "}\n";
    }
    return out.str();
}

PairwiseBatch PairwiseBatch::from_jsonl(const std::string& text) {
    PairwiseBatch batch;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto doc = nlohmann::json::parse(line);
        PairwiseRecord rec;
        rec.prompt = doc.at("x").get<std::size_t>();
        rec.winner = doc.at("yw").get<std::size_t>();
        rec.loser = doc.at("yl").get<std::size_t>();
        if (doc.contains("rw")) rec.reward_w = doc.at("rw").get<double>();
        if (doc.contains("rl")) rec.reward_l = doc.at("rl").get<double>();
        batch.records.push_back(rec);
    }
    return batch;
}

void KSampleBatch::validate(std::size_t num_prompts, std::size_t num_responses) const {
    for (const auto& rec : records) {
        if (rec.prompt >= num_prompts) throw IndexError("k-sample record: prompt out of range");
        if (rec.responses.size() < 2) throw DomainError("k-sample record: K must be >= 2");
        if (rec.responses.size() != rec.rewards.size())
            throw ShapeError("k-sample record: responses/rewards length mismatch");
        std::set<std::size_t> seen;
        for (std::size_t y : rec.responses) {
            if (y >= num_responses) throw IndexError("k-sample record: response out of range");
            if (!seen.insert(y).second)
                throw DomainError("k-sample record: duplicate response index");
        }
    }
}

std::string KSampleBatch::to_jsonl() const {
    std::ostringstream out;
    char buf[64];
    for (const auto& rec : records) {
        out << "{\"x\":" << rec.prompt << ",\"ys\":[";
        for (std::size_t i = 0; i < rec.responses.size(); ++i) {
            if (i) out << ",";
            out << rec.responses[i];
        }
        out << "],\"rs\":[";
        for (std::size_t i = 0; i < rec.rewards.size(); ++i) {
            if (i) out << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", rec.rewards[i]);
            out << buf;
        }
        out << "]}\n";
    }
    return out.str();
}

KSampleBatch KSampleBatch::from_jsonl(const std::string& text) {
    KSampleBatch batch;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto doc = nlohmann::json::parse(line);
        KSampleRecord rec;
        rec.prompt = doc.at("x").get<std::size_t>();
        for (const auto& y : doc.at("ys")) rec.responses.push_back(y.get<std::size_t>());
        for (const auto& r : doc.at("rs")) rec.rewards.push_back(r.get<double>());
        batch.records.push_back(rec);
    }
    return batch;
}

std::string variant_name(LossVariant v) {
    switch (v) {
        case LossVariant::GeneralK:
            return "general_k";
        case LossVariant::PairwiseReward:
            return "pairwise_reward";
        case LossVariant::PairwiseSmoothed:
            return "pairwise_smoothed";
        case LossVariant::SimPOStyle:
            return "simpo_style";
    }
    return "?";
}

LossVariant parse_variant(const std::string& name) {
    if (name == "general_k") return LossVariant::GeneralK;
    if (name == "pairwise_reward") return LossVariant::PairwiseReward;
    if (name == "pairwise_smoothed") return LossVariant::PairwiseSmoothed;
    if (name == "simpo_style") return LossVariant::SimPOStyle;
    throw ConfigError("unknown loss variant: " + name);
}

void LossConfig::validate() const {
    if (!(beta > 0.0)) throw ConfigError("LossConfig: beta must be positive");
    if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ConfigError("LossConfig: epsilon must lie in [0, 0.5)");
    if (epsilon == 0.0 && generator.kind() != Generator::Kind::ReverseKL &&
        (variant == LossVariant::PairwiseSmoothed || variant == LossVariant::SimPOStyle))
        throw ConfigError("LossConfig: epsilon = 0 is only defined for the ReverseKL limit path");
}

std::string LossConfig::to_json() const {
    nlohmann::json doc;
    doc["generator"] = generator.name();
    doc["beta"] = beta;
    doc["epsilon"] = epsilon;
    doc["variant"] = variant_name(variant);
    if (variant == LossVariant::SimPOStyle)
        doc["gamma"] = gamma;
    else
        doc["gamma"] = nullptr;
    return doc.dump();
}

LossConfig LossConfig::from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    LossConfig cfg;
    cfg.generator = Generator::parse(doc.at("generator").get<std::string>());
    cfg.beta = doc.at("beta").get<double>();
    cfg.epsilon = doc.at("epsilon").get<double>();
    cfg.variant = parse_variant(doc.at("variant").get<std::string>());
    if (doc.contains("gamma") && !doc.at("gamma").is_null()) cfg.gamma = doc.at("gamma").get<double>();
    if (doc.contains("reward_temperature")) cfg.reward_temperature = doc.at("reward_temperature").get<double>();
    cfg.validate();
    return cfg;
}

double LossValue::grad_inf_norm() const {
    double m = 0.0;
    for (double g : gradient) m = std::max(m, std::fabs(g));
    return m;
}

LossValue fpo_loss_general(const LossConfig& cfg, const TabularPolicy& policy,
                           const TabularPolicy& ref, const KSampleBatch& batch) {
    cfg.validate();
    batch.validate(policy.num_prompts, policy.num_responses);
    const auto rows = precompute_rows(policy, ref);
    Accumulator acc(policy);

    for (const auto& rec : batch.records) {
        const std::size_t k = rec.responses.size();
        std::vector<double> g(k), scaled_r(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t y = rec.responses[i];
            g[i] = cfg.beta * (rows.policy_logp[rec.prompt][y] - rows.ref_logp[rec.prompt][y]);
            scaled_r[i] = cfg.reward_temperature * rec.rewards[i];
        }
        const auto v = softmax(g);
        const auto w = softmax(scaled_r);

        double record_loss = 0.0;
        double weighted_fprime = 0.0;  // sum_k v_k f'(v_k/w_k)
        std::vector<double> fprime(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (w[i] <= 0.0) throw DomainError("fpo_loss_general: reward softmax underflow");
            const double u = v[i] / w[i];
            record_loss += w[i] * cfg.generator.eval(u);
            fprime[i] = cfg.generator.derivative(u);
            weighted_fprime += v[i] * fprime[i];
        }
        acc.value.loss += record_loss;

        // dL/dg_i = v_i (f'(u_i) - sum_k v_k f'(u_k)); chain through log-softmax.
        double total_a = 0.0;
        std::vector<double> a(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = v[i] * (fprime[i] - weighted_fprime);
            total_a += a[i];
        }
        double* grad_row = acc.value.gradient.data() + rec.prompt * policy.num_responses;
        const auto& p = rows.policy_p[rec.prompt];
        for (std::size_t j = 0; j < policy.num_responses; ++j)
            grad_row[j] -= cfg.beta * p[j] * total_a;
        for (std::size_t i = 0; i < k; ++i) grad_row[rec.responses[i]] += cfg.beta * a[i];
    }

    acc.finalize(batch.records.size(), cfg.sum_reduction);
    return acc.value;
}

namespace {

// Shared driver for the margin-based pairwise losses. `scalar` maps a margin
// to (value, d/dmargin); the margin is either the g-odds or the SimPO-style
// length-normalized one.
template <typename ScalarFn>
LossValue pairwise_driver(const LossConfig& cfg, const TabularPolicy& policy,
                          const TabularPolicy& ref, const PairwiseBatch& batch, bool simpo_margin,
                          ScalarFn&& scalar) {
    batch.validate(policy.num_prompts, policy.num_responses);
    const auto rows = precompute_rows(policy, ref);
    Accumulator acc(policy);

    for (const auto& rec : batch.records) {
        const auto& lp = rows.policy_logp[rec.prompt];
        const auto& p = rows.policy_p[rec.prompt];
        double* grad_row = acc.value.gradient.data() + rec.prompt * policy.num_responses;

        if (!simpo_margin) {
            const auto& lr = rows.ref_logp[rec.prompt];
            const double delta = cfg.beta * ((lp[rec.winner] - lr[rec.winner]) -
                                             (lp[rec.loser] - lr[rec.loser]));
            const ScalarLoss s = scalar(rec, delta);
            acc.value.loss += s.value;
            // d delta / d z_j = beta (delta_wj - delta_lj); softmax terms cancel.
            grad_row[rec.winner] += s.ddelta * cfg.beta;
            grad_row[rec.loser] -= s.ddelta * cfg.beta;
        } else {
            const std::size_t lw = policy.length(rec.prompt, rec.winner);
            const std::size_t ll = policy.length(rec.prompt, rec.loser);
            if (lw == 0 || ll == 0) throw LengthError("simpo margin: zero response length");
            const double cw = cfg.beta / static_cast<double>(lw);
            const double cl = cfg.beta / static_cast<double>(ll);
            const double delta = cw * lp[rec.winner] - cl * lp[rec.loser] - cfg.gamma;
            const ScalarLoss s = scalar(rec, delta);
            acc.value.loss += s.value;
            for (std::size_t j = 0; j < policy.num_responses; ++j)
                grad_row[j] += s.ddelta * (p[j] * (cl - cw));
            grad_row[rec.winner] += s.ddelta * cw;
            grad_row[rec.loser] -= s.ddelta * cl;
        }
    }

    acc.finalize(batch.records.size(), cfg.sum_reduction);
    return acc.value;
}

}  // namespace

LossValue fpo_loss_pairwise_reward(const LossConfig& cfg, const TabularPolicy& policy,
                                   const TabularPolicy& ref, const PairwiseBatch& batch) {
    cfg.validate();
    return pairwise_driver(cfg, policy, ref, batch, false,
                           [&cfg](const PairwiseRecord& rec, double delta) {
                               if (!rec.reward_w || !rec.reward_l)
                                   throw ConfigError("fpo_loss_pairwise_reward: records lack rewards");
                               double p = sigmoid(*rec.reward_w - *rec.reward_l);
                               p = std::clamp(p, kRewardClamp, 1.0 - kRewardClamp);
                               return weighted_pair_loss(cfg.generator, p, delta);
                           });
}

LossValue fpo_loss_pairwise_smoothed(const LossConfig& cfg, const TabularPolicy& policy,
                                     const TabularPolicy& ref, const PairwiseBatch& batch) {
    cfg.validate();
    const bool simpo = cfg.variant == LossVariant::SimPOStyle;
    return pairwise_driver(cfg, policy, ref, batch, simpo,
                           [&cfg](const PairwiseRecord&, double delta) {
                               return smoothed_pair_loss(cfg.generator, cfg.epsilon, delta);
                           });
}

LossValue dpo_loss(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   const PairwiseBatch& batch) {
    LossConfig cfg;
    cfg.generator = Generator::reverse_kl();
    cfg.beta = beta;
    return pairwise_driver(cfg, policy, ref, batch, false, [](const PairwiseRecord&, double delta) {
        ScalarLoss s;
        s.value = -log_sigmoid(delta);
        s.ddelta = -sigmoid(-delta);
        return s;
    });
}

LossValue exo_loss(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   double epsilon, const PairwiseBatch& batch) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("exo_loss: epsilon must lie in (0, 0.5)");
    LossConfig cfg;
    cfg.generator = Generator::forward_kl();
    cfg.beta = beta;
    return pairwise_driver(cfg, policy, ref, batch, false,
                           [epsilon](const PairwiseRecord&, double delta) {
                               const double s1 = sigmoid(delta);
                               const double s2 = sigmoid(-delta);
                               const double t1 = log_sigmoid(delta) - std::log1p(-epsilon);
                               const double t2 = log_sigmoid(-delta) - std::log(epsilon);
                               ScalarLoss s;
                               s.value = s1 * t1 + s2 * t2;
                               s.ddelta = s1 * s2 * (t1 - t2);
                               return s;
                           });
}

double simpo_style_delta(const TabularPolicy& policy, double beta, double gamma,
                         std::size_t prompt, std::size_t winner, std::size_t loser) {
    if (prompt >= policy.num_prompts) throw IndexError("simpo_style_delta: prompt out of range");
    if (winner >= policy.num_responses || loser >= policy.num_responses)
        throw IndexError("simpo_style_delta: response out of range");
    const std::size_t lw = policy.length(prompt, winner);
    const std::size_t ll = policy.length(prompt, loser);
    if (lw == 0 || ll == 0) throw LengthError("simpo_style_delta: zero response length");
    const auto lp = policy_log_distribution(policy, prompt);
    return beta / static_cast<double>(lw) * lp[winner] -
           beta / static_cast<double>(ll) * lp[loser] - gamma;
}

LossValue evaluate_loss(const LossConfig& cfg, const TabularPolicy& policy,
                        const TabularPolicy& ref, const Batch& batch) {
    if (std::holds_alternative<KSampleBatch>(batch)) {
        if (cfg.variant != LossVariant::GeneralK)
            throw ConfigError("evaluate_loss: k-sample batch requires the general_k variant");
        return fpo_loss_general(cfg, policy, ref, std::get<KSampleBatch>(batch));
    }
    const auto& pw = std::get<PairwiseBatch>(batch);
    switch (cfg.variant) {
        case LossVariant::PairwiseReward:
            return fpo_loss_pairwise_reward(cfg, policy, ref, pw);
        case LossVariant::PairwiseSmoothed:
        case LossVariant::SimPOStyle:
            return fpo_loss_pairwise_smoothed(cfg, policy, ref, pw);
        case LossVariant::GeneralK:
            throw ConfigError("evaluate_loss: general_k variant requires a k-sample batch");
    }
    throw ConfigError("evaluate_loss: unhandled variant");
}

GradCheckReport loss_gradient_check(const LossConfig& cfg, const TabularPolicy& policy,
                                    const TabularPolicy& ref, const Batch& batch, double h) {
    if (!(h >= 1e-7 && h <= 1e-3)) throw ConfigError("loss_gradient_check: h out of range");
    const LossValue analytic = evaluate_loss(cfg, policy, ref, batch);

    std::set<std::size_t> touched;
    if (std::holds_alternative<PairwiseBatch>(batch)) {
        for (const auto& rec : std::get<PairwiseBatch>(batch).records) touched.insert(rec.prompt);
    } else {
        for (const auto& rec : std::get<KSampleBatch>(batch).records) touched.insert(rec.prompt);
    }

    GradCheckReport report;
    report.grad_inf_norm = analytic.grad_inf_norm();
    TabularPolicy probe = policy;
    for (std::size_t x : touched) {
        for (std::size_t y = 0; y < policy.num_responses; ++y) {
            const double saved = probe.logit(x, y);
            probe.logit(x, y) = saved + h;
            const double up = evaluate_loss(cfg, probe, ref, batch).loss;
            probe.logit(x, y) = saved - h;
            const double down = evaluate_loss(cfg, probe, ref, batch).loss;
            probe.logit(x, y) = saved;
            const double fd = (up - down) / (2.0 * h);
            const double denom = std::max(std::fabs(fd), 1e-8);
            const double rel = std::fabs(analytic.grad(x, y) - fd) / denom;
            report.worst_rel_error = std::max(report.worst_rel_error, rel);
        }
    }
    return report;
}

}  // namespace fpo
