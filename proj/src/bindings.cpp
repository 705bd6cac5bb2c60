#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpo/datagen.hpp"
#include "fpo/generators.hpp"
#include "fpo/harness.hpp"
#include "fpo/losses.hpp"
#include "fpo/policy.hpp"
#include "fpo/trainer.hpp"

namespace py = pybind11;
using namespace fpo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "f-divergence preference optimization over tabular policies";

    py::class_<Generator>(m, "Generator")
        .def_static("parse", &Generator::parse, py::arg("name"))
        .def_static("forward_kl", &Generator::forward_kl)
        .def_static("reverse_kl", &Generator::reverse_kl)
        .def_static("jensen_shannon", &Generator::jensen_shannon)
        .def_static("jeffreys", &Generator::jeffreys)
        .def_static("alpha_divergence", &Generator::alpha_divergence, py::arg("alpha"))
        .def_property_readonly("name", &Generator::name)
        .def("__call__", &Generator::eval, py::arg("u"))
        .def("eval", &Generator::eval, py::arg("u"))
        .def("derivative", &Generator::derivative, py::arg("u"));

    py::class_<ValidityReport>(m, "ValidityReport")
        .def_readonly("f_at_one_residual", &ValidityReport::f_at_one_residual)
        .def_readonly("worst_convexity_violation", &ValidityReport::worst_convexity_violation)
        .def_readonly("worst_derivative_rel_error", &ValidityReport::worst_derivative_rel_error);
    m.def("check_generator", &check_generator, py::arg("generator"), py::arg("grid"));
    m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));

    py::class_<Distribution>(m, "Distribution")
        .def(py::init([](std::vector<double> probs) { return Distribution{std::move(probs)}; }))
        .def_readonly("probs", &Distribution::probs);

    py::class_<TabularPolicy>(m, "TabularPolicy")
        .def_static("zeros", &TabularPolicy::zeros, py::arg("num_prompts"), py::arg("num_responses"))
        .def_readwrite("num_prompts", &TabularPolicy::num_prompts)
        .def_readwrite("num_responses", &TabularPolicy::num_responses)
        .def_readwrite("logits", &TabularPolicy::logits)
        .def_readwrite("lengths", &TabularPolicy::lengths)
        .def("to_json", &TabularPolicy::to_json)
        .def_static("from_json", &TabularPolicy::from_json, py::arg("text"));

    py::class_<RewardTable>(m, "RewardTable")
        .def(py::init<>())
        .def_readwrite("num_prompts", &RewardTable::num_prompts)
        .def_readwrite("num_responses", &RewardTable::num_responses)
        .def_readwrite("values", &RewardTable::values)
        .def("to_json", &RewardTable::to_json)
        .def_static("from_json", &RewardTable::from_json, py::arg("text"));

    m.def("policy_distribution", &policy_distribution, py::arg("policy"), py::arg("prompt"));
    m.def("geometric_mixture", &geometric_mixture, py::arg("policy"), py::arg("ref"),
          py::arg("beta"), py::arg("prompt"));
    m.def("optimal_policy", &optimal_policy, py::arg("ref"), py::arg("reward"), py::arg("beta"),
          py::arg("prompt"), py::arg("hatted") = false);
    m.def("log_ratio_g", &log_ratio_g, py::arg("policy"), py::arg("ref"), py::arg("beta"),
          py::arg("prompt"), py::arg("response"));
    m.def("exact_f_divergence", &exact_f_divergence, py::arg("generator"), py::arg("p"),
          py::arg("q"));
    m.def("tv_distance", &tv_distance, py::arg("p"), py::arg("q"));

    py::class_<PairwiseRecord>(m, "PairwiseRecord")
        .def(py::init<>())
        .def_readwrite("prompt", &PairwiseRecord::prompt)
        .def_readwrite("winner", &PairwiseRecord::winner)
        .def_readwrite("loser", &PairwiseRecord::loser)
        .def_readwrite("reward_w", &PairwiseRecord::reward_w)
        .def_readwrite("reward_l", &PairwiseRecord::reward_l);
    py::class_<PairwiseBatch>(m, "PairwiseBatch")
        .def(py::init<>())
        .def_readwrite("records", &PairwiseBatch::records)
        .def("to_jsonl", &PairwiseBatch::to_jsonl)
        .def_static("from_jsonl", &PairwiseBatch::from_jsonl, py::arg("text"));
    py::class_<KSampleRecord>(m, "KSampleRecord")
        .def(py::init<>())
        .def_readwrite("prompt", &KSampleRecord::prompt)
        .def_readwrite("responses", &KSampleRecord::responses)
        .def_readwrite("rewards", &KSampleRecord::rewards);
    py::class_<KSampleBatch>(m, "KSampleBatch")
        .def(py::init<>())
        .def_readwrite("records", &KSampleBatch::records)
        .def("to_jsonl", &KSampleBatch::to_jsonl)
        .def_static("from_jsonl", &KSampleBatch::from_jsonl, py::arg("text"));

    py::enum_<LossVariant>(m, "LossVariant")
        .value("GeneralK", LossVariant::GeneralK)
        .value("PairwiseReward", LossVariant::PairwiseReward)
        .value("PairwiseSmoothed", LossVariant::PairwiseSmoothed)
        .value("SimPOStyle", LossVariant::SimPOStyle);

    py::class_<LossConfig>(m, "LossConfig")
        .def(py::init<>())
        .def_readwrite("generator", &LossConfig::generator)
        .def_readwrite("beta", &LossConfig::beta)
        .def_readwrite("epsilon", &LossConfig::epsilon)
        .def_readwrite("variant", &LossConfig::variant)
        .def_readwrite("gamma", &LossConfig::gamma)
        .def_readwrite("reward_temperature", &LossConfig::reward_temperature)
        .def("to_json", &LossConfig::to_json)
        .def_static("from_json", &LossConfig::from_json, py::arg("text"));

    py::class_<LossValue>(m, "LossValue")
        .def_readonly("loss", &LossValue::loss)
        .def_readonly("gradient", &LossValue::gradient)
        .def("grad_inf_norm", &LossValue::grad_inf_norm);

    m.def("fpo_loss_general", &fpo_loss_general);
    m.def("fpo_loss_pairwise_reward", &fpo_loss_pairwise_reward);
    m.def("fpo_loss_pairwise_smoothed", &fpo_loss_pairwise_smoothed);
    m.def("dpo_loss", &dpo_loss);
    m.def("exo_loss", &exo_loss);
    m.def("simpo_style_delta", &simpo_style_delta, py::arg("policy"), py::arg("beta"),
          py::arg("gamma"), py::arg("prompt"), py::arg("winner"), py::arg("loser"));

    py::enum_<OptimizerAlgorithm>(m, "OptimizerAlgorithm")
        .value("GradientDescent", OptimizerAlgorithm::GradientDescent)
        .value("AdamLike", OptimizerAlgorithm::AdamLike);
    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("algorithm", &OptimizerConfig::algorithm)
        .def_readwrite("learning_rate", &OptimizerConfig::learning_rate)
        .def_readwrite("max_steps", &OptimizerConfig::max_steps)
        .def_readwrite("tolerance", &OptimizerConfig::tolerance)
        .def_readwrite("log_interval", &OptimizerConfig::log_interval);
    py::class_<TrainReport>(m, "TrainReport")
        .def_readonly("steps_taken", &TrainReport::steps_taken)
        .def_readonly("loss_trajectory", &TrainReport::loss_trajectory)
        .def_readonly("grad_norm_trajectory", &TrainReport::grad_norm_trajectory)
        .def_readonly("tv_to_optimal_trajectory", &TrainReport::tv_to_optimal_trajectory)
        .def_readonly("final_policy", &TrainReport::final_policy)
        .def("final_loss", &TrainReport::final_loss)
        .def("final_tv", &TrainReport::final_tv)
        .def("to_csv", &TrainReport::to_csv)
        .def("to_json", &TrainReport::to_json);

    m.def(
        "train",
        [](const OptimizerConfig& opt, const LossConfig& cfg, const TabularPolicy& init,
           const TabularPolicy& ref, std::optional<RewardTable> reward, const Batch& data) {
            return train(opt, cfg, init, ref, reward, data);
        },
        py::arg("opt"), py::arg("cfg"), py::arg("init"), py::arg("ref"), py::arg("reward"),
        py::arg("data"));

    py::class_<SyntheticTask>(m, "SyntheticTask")
        .def_readwrite("ref", &SyntheticTask::ref)
        .def_readwrite("reward", &SyntheticTask::reward)
        .def_readwrite("beta_star", &SyntheticTask::beta_star)
        .def("to_json", &SyntheticTask::to_json)
        .def_static("from_json", &SyntheticTask::from_json, py::arg("text"));
    m.def("make_synthetic_task", &make_synthetic_task, py::arg("seed"), py::arg("num_prompts"),
          py::arg("num_responses"), py::arg("beta_star"), py::arg("reward_scale"));
    m.def("sample_preferences", &sample_preferences, py::arg("task"), py::arg("n"),
          py::arg("seed"), py::arg("temperature") = 1.0);
    m.def("sample_reward_dataset", &sample_reward_dataset, py::arg("task"), py::arg("n"),
          py::arg("k"), py::arg("seed"), py::arg("full_support") = false,
          py::arg("temperature") = 1.0);

    m.def("win_proxy", &win_proxy, py::arg("policy"), py::arg("task"));
    m.def("cli_main", [](const std::vector<std::string>& args) {
        std::vector<std::string> argv_store = args;
        argv_store.insert(argv_store.begin(), "fpo");
        std::vector<char*> argv;
        for (auto& a : argv_store) argv.push_back(a.data());
        return cli_main(static_cast<int>(argv.size()), argv.data());
    });
}
