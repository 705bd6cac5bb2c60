#include "fpo/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fpo/errors.hpp"

namespace fpo {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double mean_tv_to_optimal(const TabularPolicy& policy, const TabularPolicy& ref,
                          const RewardTable& reward, double beta) {
    double total = 0.0;
    for (std::size_t x = 0; x < policy.num_prompts; ++x) {
        const auto hat_theta = geometric_mixture(policy, ref, beta, x);
        const auto hat_star = optimal_policy(ref, reward, beta, x, /*hatted=*/true);
        total += tv_distance(hat_theta, hat_star);
    }
    return total / static_cast<double>(policy.num_prompts);
}

}  // namespace

void OptimizerConfig::validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("OptimizerConfig: learning_rate must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
        throw ConfigError("OptimizerConfig: beta1/beta2 must lie in [0, 1)");
    if (max_steps == 0 && tolerance <= 0.0)
        throw ConfigError("OptimizerConfig: no stopping criterion");
}

void gd_step(const OptimizerConfig& cfg, OptimizerState& state, std::vector<double>& params,
             const std::vector<double>& gradient) {
    state.step++;
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= cfg.learning_rate * gradient[i];
}

void adam_step(const OptimizerConfig& cfg, OptimizerState& state, std::vector<double>& params,
               const std::vector<double>& gradient) {
    if (state.first_moment.size() != params.size()) {
        state.first_moment.assign(params.size(), 0.0);
        state.second_moment.assign(params.size(), 0.0);
    }
    state.step++;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = gradient[i];
        state.first_moment[i] = cfg.beta1 * state.first_moment[i] + (1.0 - cfg.beta1) * g;
        state.second_moment[i] = cfg.beta2 * state.second_moment[i] + (1.0 - cfg.beta2) * g * g;
        const double m_hat = state.first_moment[i] / bc1;
        const double v_hat = state.second_moment[i] / bc2;
        params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps_adam);
    }
}

std::string TrainReport::to_json() const {
    nlohmann::json doc;
    doc["steps_taken"] = steps_taken;
    doc["step_index"] = step_index;
    doc["loss_trajectory"] = loss_trajectory;
    doc["grad_norm_trajectory"] = grad_norm_trajectory;
    doc["tv_to_optimal_trajectory"] = tv_to_optimal_trajectory;
    doc["final_policy"] = nlohmann::json::parse(final_policy.to_json());
    return doc.dump();
}

std::string TrainReport::to_csv() const {
    std::ostringstream out;
    out << "step,loss,grad_norm,tv_to_optimal\n";
    for (std::size_t i = 0; i < step_index.size(); ++i) {
        out << step_index[i] << "," << format_double(loss_trajectory[i]) << ","
            << format_double(grad_norm_trajectory[i]) << ",";
        if (i < tv_to_optimal_trajectory.size()) out << format_double(tv_to_optimal_trajectory[i]);
        out << "\n";
    }
    return out.str();
}

TrainReport train(const OptimizerConfig& opt, const LossConfig& cfg, const TabularPolicy& init,
                  const TabularPolicy& ref, const std::optional<RewardTable>& reward,
                  const Batch& data) {
    opt.validate();
    cfg.validate();
    init.validate();
    if (!init.same_shape(ref)) throw ShapeError("train: init/ref shape mismatch");

    TrainReport report;
    report.final_policy = init;
    OptimizerState state;
    auto& params = report.final_policy.logits;

    auto record_point = [&](std::size_t step, const LossValue& value) {
        report.step_index.push_back(step);
        report.loss_trajectory.push_back(value.loss);
        report.grad_norm_trajectory.push_back(value.grad_inf_norm());
        if (reward)
            report.tv_to_optimal_trajectory.push_back(
                mean_tv_to_optimal(report.final_policy, ref, *reward, cfg.beta));
    };

    for (std::size_t step = 0;; ++step) {
        const LossValue value = evaluate_loss(cfg, report.final_policy, ref, data);
        if (!std::isfinite(value.loss))
            throw DivergenceError("train: non-finite loss at step " + std::to_string(step));
        const double gnorm = value.grad_inf_norm();
        const bool done = step >= opt.max_steps || gnorm < opt.tolerance;
        if (done || step % opt.log_interval == 0) record_point(step, value);
        if (done) {
            report.steps_taken = step;
            break;
        }
        if (opt.algorithm == OptimizerAlgorithm::AdamLike)
            adam_step(opt, state, params, value.gradient);
        else
            gd_step(opt, state, params, value.gradient);
        for (double v : params)
            if (!std::isfinite(v))
                throw DivergenceError("train: non-finite parameter at step " + std::to_string(step));
    }
    return report;
}

}  // namespace fpo
