"""f-divergence preference optimization over tabular policies.

Thin re-export of the compiled core; see the README for the C++ API.
"""

from fpo._core import (
    Distribution,
    Generator,
    KSampleBatch,
    KSampleRecord,
    LossConfig,
    LossVariant,
    LossValue,
    OptimizerAlgorithm,
    OptimizerConfig,
    PairwiseBatch,
    PairwiseRecord,
    RewardTable,
    SyntheticTask,
    TabularPolicy,
    TrainReport,
    ValidityReport,
    check_generator,
    cli_main,
    dpo_loss,
    exact_f_divergence,
    exo_loss,
    fpo_loss_general,
    fpo_loss_pairwise_reward,
    fpo_loss_pairwise_smoothed,
    geometric_mixture,
    log_grid,
    log_ratio_g,
    make_synthetic_task,
    optimal_policy,
    policy_distribution,
    sample_preferences,
    sample_reward_dataset,
    simpo_style_delta,
    train,
    tv_distance,
    win_proxy,
)

__all__ = [
    "Distribution",
    "Generator",
    "KSampleBatch",
    "KSampleRecord",
    "LossConfig",
    "LossVariant",
    "LossValue",
    "OptimizerAlgorithm",
    "OptimizerConfig",
    "PairwiseBatch",
    "PairwiseRecord",
    "RewardTable",
    "SyntheticTask",
    "TabularPolicy",
    "TrainReport",
    "ValidityReport",
    "check_generator",
    "cli_main",
    "dpo_loss",
    "exact_f_divergence",
    "exo_loss",
    "fpo_loss_general",
    "fpo_loss_pairwise_reward",
    "fpo_loss_pairwise_smoothed",
    "geometric_mixture",
    "log_grid",
    "log_ratio_g",
    "make_synthetic_task",
    "optimal_policy",
    "policy_distribution",
    "sample_preferences",
    "sample_reward_dataset",
    "simpo_style_delta",
    "train",
    "tv_distance",
    "win_proxy",
]
