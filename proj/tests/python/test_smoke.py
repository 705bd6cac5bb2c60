import math

import pytest

import fpo


def test_generator_catalog():
    fkl = fpo.Generator.parse("fkl")
    assert abs(fkl(1.0)) < 1e-12
    assert fkl.derivative(1.0) == pytest.approx(1.0)
    assert fpo.Generator.alpha_divergence(0.5)(4.0) == pytest.approx(2.0)
    report = fpo.check_generator(fkl, fpo.log_grid(1e-4, 1e4, 101))
    assert report.worst_convexity_violation < 1e-9


def test_divergence_and_optimal_policy():
    p = fpo.Distribution([0.5, 0.5])
    q = fpo.Distribution([0.25, 0.75])
    assert fpo.exact_f_divergence(fpo.Generator.forward_kl(), p, q) == pytest.approx(
        0.5 * math.log(4.0 / 3.0)
    )
    assert fpo.tv_distance(p, q) == pytest.approx(0.25)

    task = fpo.make_synthetic_task(7, 4, 8, 0.5, 2.0)
    for x in range(4):
        opt = fpo.optimal_policy(task.ref, task.reward, task.beta_star, x, False)
        assert sum(opt.probs) == pytest.approx(1.0)


def test_dpo_equivalence():
    task = fpo.make_synthetic_task(3, 2, 4, 0.5, 2.0)
    batch = fpo.sample_preferences(task, 64, 11)
    policy = fpo.TabularPolicy.zeros(2, 4)

    cfg = fpo.LossConfig()
    cfg.generator = fpo.Generator.reverse_kl()
    cfg.epsilon = 0.0
    ours = fpo.fpo_loss_pairwise_smoothed(cfg, policy, task.ref, batch)
    dpo = fpo.dpo_loss(policy, task.ref, cfg.beta, batch)
    assert ours.loss == pytest.approx(dpo.loss, abs=1e-12)


def test_training_reaches_optimum():
    task = fpo.make_synthetic_task(5, 2, 4, 0.5, 2.0)
    data = fpo.sample_reward_dataset(task, 2, 4, 13, True)

    cfg = fpo.LossConfig()
    cfg.generator = fpo.Generator.parse("alpha:0.5")
    cfg.variant = fpo.LossVariant.GeneralK
    cfg.beta = task.beta_star

    opt = fpo.OptimizerConfig()
    report = fpo.train(opt, cfg, fpo.TabularPolicy.zeros(2, 4), task.ref, task.reward, data)
    assert report.final_tv() < 1e-3
    assert report.to_csv().startswith("step,loss,grad_norm,tv_to_optimal")


def test_cli_roundtrip(tmp_path):
    out = tmp_path / "eq.csv"
    code = fpo.cli_main(["equivalence", "--seed", "3", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,max_gap"
    assert len(lines) == 7
