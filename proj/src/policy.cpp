#include "fpo/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fpo/errors.hpp"

namespace fpo {

namespace {

// 17 significant digits round-trips IEEE doubles bit-exactly.
std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_matrix(std::ostringstream& out, const std::vector<double>& values,
                   std::size_t rows, std::size_t cols) {
    out << "[";
    for (std::size_t x = 0; x < rows; ++x) {
        if (x) out << ",";
        out << "[";
        for (std::size_t y = 0; y < cols; ++y) {
            if (y) out << ",";
            out << format_double(values[x * cols + y]);
        }
        out << "]";
    }
    out << "]";
}

}  // namespace

void Distribution::validate() const {
    if (probs.empty()) throw DomainError("Distribution: empty support");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw DomainError("Distribution: negative or NaN probability");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw DomainError("Distribution: probabilities sum to " + format_double(total));
}

TabularPolicy TabularPolicy::zeros(std::size_t prompts, std::size_t responses) {
    TabularPolicy p;
    p.num_prompts = prompts;
    p.num_responses = responses;
    p.logits.assign(prompts * responses, 0.0);
    p.lengths.assign(prompts * responses, 1);
    return p;
}

void TabularPolicy::validate() const {
    if (num_prompts == 0 || num_responses == 0)
        throw ShapeError("TabularPolicy: dimensions must be positive");
    if (logits.size() != num_prompts * num_responses ||
        lengths.size() != num_prompts * num_responses)
        throw ShapeError("TabularPolicy: storage does not match dimensions");
    for (double v : logits)
        if (!std::isfinite(v)) throw DomainError("TabularPolicy: non-finite logit");
    for (std::size_t l : lengths)
        if (l < 1) throw DomainError("TabularPolicy: lengths must be >= 1");
}

std::string TabularPolicy::to_json() const {
    std::ostringstream out;
    out << "{\"num_prompts\":" << num_prompts << ",\"num_responses\":" << num_responses
        << ",\"logits\":";
    append_matrix(out, logits, num_prompts, num_responses);
    out << ",\"lengths\":[";
    for (std::size_t x = 0; x < num_prompts; ++x) {
        if (x) out << ",";
        out << "[";
        for (std::size_t y = 0; y < num_responses; ++y) {
            if (y) out << ",";
            out << lengths[x * num_responses + y];
        }
        out << "]";
    }
    out << "]}";
    return out.str();
}

TabularPolicy TabularPolicy::from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    TabularPolicy p;
    p.num_prompts = doc.at("num_prompts").get<std::size_t>();
    p.num_responses = doc.at("num_responses").get<std::size_t>();
    for (const auto& row : doc.at("logits"))
        for (const auto& v : row) p.logits.push_back(v.get<double>());
    for (const auto& row : doc.at("lengths"))
        for (const auto& v : row) p.lengths.push_back(v.get<std::size_t>());
    p.validate();
    return p;
}

void RewardTable::validate() const {
    if (values.size() != num_prompts * num_responses)
        throw ShapeError("RewardTable: storage does not match dimensions");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("RewardTable: non-finite reward");
}

std::string RewardTable::to_json() const {
    std::ostringstream out;
    out << "{\"values\":";
    append_matrix(out, values, num_prompts, num_responses);
    out << "}";
    return out.str();
}

RewardTable RewardTable::from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    RewardTable r;
    for (const auto& row : doc.at("values")) {
        r.num_prompts++;
        std::size_t cols = 0;
        for (const auto& v : row) {
            r.values.push_back(v.get<double>());
            ++cols;
        }
        r.num_responses = cols;
    }
    r.validate();
    return r;
}

std::vector<double> softmax(const std::vector<double>& logits) {
    std::vector<double> out(logits.size());
    const double m = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - m);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

std::vector<double> log_softmax(const std::vector<double>& logits) {
    std::vector<double> out(logits.size());
    const double m = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double v : logits) total += std::exp(v - m);
    const double lse = m + std::log(total);
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
    return out;
}

double log_sigmoid(double x) {
    // -softplus(-x)
    if (x > 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

double sigmoid(double x) { return std::exp(log_sigmoid(x)); }

namespace {

std::vector<double> policy_row(const TabularPolicy& policy, std::size_t prompt) {
    if (prompt >= policy.num_prompts)
        throw IndexError("prompt index " + std::to_string(prompt) + " out of range");
    return {policy.logits.begin() + static_cast<std::ptrdiff_t>(prompt * policy.num_responses),
            policy.logits.begin() + static_cast<std::ptrdiff_t>((prompt + 1) * policy.num_responses)};
}

}  // namespace

Distribution policy_distribution(const TabularPolicy& policy, std::size_t prompt) {
    return Distribution{softmax(policy_row(policy, prompt))};
}

std::vector<double> policy_log_distribution(const TabularPolicy& policy, std::size_t prompt) {
    return log_softmax(policy_row(policy, prompt));
}

Distribution geometric_mixture(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                               std::size_t prompt) {
    if (!policy.same_shape(ref)) throw ShapeError("geometric_mixture: shape mismatch");
    if (!(beta > 0.0)) throw DomainError("geometric_mixture: beta must be positive");
    const auto lp = policy_log_distribution(policy, prompt);
    const auto lr = policy_log_distribution(ref, prompt);
    std::vector<double> mixed(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) mixed[i] = beta * lp[i] + (1.0 - beta) * lr[i];
    return Distribution{softmax(mixed)};
}

Distribution optimal_policy(const TabularPolicy& ref, const RewardTable& reward, double beta,
                            std::size_t prompt, bool hatted) {
    if (ref.num_prompts != reward.num_prompts || ref.num_responses != reward.num_responses)
        throw ShapeError("optimal_policy: reward table shape mismatch");
    if (!(beta > 0.0)) throw DomainError("optimal_policy: beta must be positive");
    const auto lr = policy_log_distribution(ref, prompt);
    std::vector<double> tilted(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
        const double r = reward(prompt, i);
        tilted[i] = lr[i] + (hatted ? r : r / beta);
        if (!std::isfinite(tilted[i])) throw NonFiniteError("optimal_policy: tilted logit overflow");
    }
    return Distribution{softmax(tilted)};
}

double log_ratio_g(const TabularPolicy& policy, const TabularPolicy& ref, double beta,
                   std::size_t prompt, std::size_t response) {
    if (!policy.same_shape(ref)) throw ShapeError("log_ratio_g: shape mismatch");
    if (response >= policy.num_responses) throw IndexError("log_ratio_g: response out of range");
    const auto lp = policy_log_distribution(policy, prompt);
    const auto lr = policy_log_distribution(ref, prompt);
    return beta * (lp[response] - lr[response]);
}

double exact_f_divergence(const Generator& gen, const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw SupportError("exact_f_divergence: support size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0.0) {
            if (p[i] == 0.0) continue;  // 0 * f(0/0) := 0
            const double slope = gen.slope_at_infinity();
            if (!std::isfinite(slope))
                throw SupportError("exact_f_divergence: q has a zero where p is positive");
            total += p[i] * slope;  // lim q*f(p/q)
            continue;
        }
        total += q[i] * gen.eval(p[i] / q[i]);
    }
    return total;
}

double tv_distance(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw SupportError("tv_distance: support size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += std::fabs(p[i] - q[i]);
    return 0.5 * total;
}

}  // namespace fpo
