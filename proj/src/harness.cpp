#include "fpo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpo/errors.hpp"
#include "fpo/random.hpp"

namespace fpo {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t thread_cap() {
    if (const char* env = std::getenv("FPO_THREADS")) {
        const long n = std::atol(env);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(0..n-1) on up to FPO_THREADS workers; exceptions are rethrown.
void parallel_map(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

SyntheticTask task_from_config(const ExperimentConfig& cfg) {
    return make_synthetic_task(cfg.seed, cfg.num_prompts, cfg.num_responses, cfg.beta,
                               cfg.reward_scale);
}

TabularPolicy random_policy(const SyntheticTask& task, std::uint64_t seed) {
    Rng rng(seed);
    TabularPolicy p = task.ref;
    for (double& v : p.logits) v = rng.normal();
    return p;
}

double mean_tv(const TabularPolicy& a, const TabularPolicy& b) {
    double total = 0.0;
    for (std::size_t x = 0; x < a.num_prompts; ++x)
        total += tv_distance(policy_distribution(a, x), policy_distribution(b, x));
    return total / static_cast<double>(a.num_prompts);
}

}  // namespace

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out << ",";
        out << columns[c];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (std::holds_alternative<std::string>(row[c]))
                out << std::get<std::string>(row[c]);
            else if (std::holds_alternative<double>(row[c]))
                out << format_double(std::get<double>(row[c]));
            else
                out << std::get<std::uint64_t>(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

std::string ResultTable::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<std::string>(row[c]))
                obj[columns[c]] = std::get<std::string>(row[c]);
            else if (std::holds_alternative<double>(row[c]))
                obj[columns[c]] = std::get<double>(row[c]);
            else
                obj[columns[c]] = std::get<std::uint64_t>(row[c]);
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

std::string ResultTable::render(const std::string& format) const {
    if (format == "csv") return to_csv();
    if (format == "json") return to_json();
    throw ConfigError("unknown output format: " + format);
}

Distribution GridDensityFamily::density(double mu, double log_sigma) const {
    const double sigma = std::exp(log_sigma);
    std::vector<double> logp(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = (grid[i] - mu) / sigma;
        logp[i] = -0.5 * z * z;
    }
    return Distribution{softmax(logp)};
}

double win_proxy(const TabularPolicy& policy, const SyntheticTask& task) {
    double total = 0.0;
    for (std::size_t x = 0; x < policy.num_prompts; ++x) {
        const auto p = policy_distribution(policy, x);
        const auto q = policy_distribution(task.ref, x);
        double px = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b)
                px += p[a] * q[b] * sigmoid(task.reward(x, a) - task.reward(x, b));
        total += px;
    }
    return total / static_cast<double>(policy.num_prompts);
}

ResultTable run_generator_check(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"generator", "f1_residual", "convexity_violation", "deriv_rel_error"};
    const auto grid = log_grid(1e-4, 1e4, 101);
    table.rows.resize(cfg.generators.size());
    parallel_map(cfg.generators.size(), [&](std::size_t i) {
        const auto gen = Generator::parse(cfg.generators[i]);
        const auto report = check_generator(gen, grid);
        table.rows[i] = {cfg.generators[i], report.f_at_one_residual,
                         report.worst_convexity_violation, report.worst_derivative_rel_error};
    });
    return table;
}

ResultTable run_theorem1(const ExperimentConfig& cfg) {
    const SyntheticTask task = task_from_config(cfg);
    const KSampleBatch data =
        sample_reward_dataset(task, cfg.num_prompts, cfg.num_responses, cfg.seed, true);

    ResultTable table;
    table.columns = {"generator", "final_tv_hat", "final_tv", "steps", "seconds"};
    table.rows.resize(cfg.generators.size());
    parallel_map(cfg.generators.size(), [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        LossConfig loss;
        loss.generator = Generator::parse(cfg.generators[i]);
        loss.variant = LossVariant::GeneralK;
        loss.beta = cfg.beta;

        OptimizerConfig opt;
        opt.learning_rate = cfg.learning_rate;
        opt.max_steps = cfg.max_steps;

        const TabularPolicy init =
            cfg.init_from_ref ? task.ref : TabularPolicy::zeros(cfg.num_prompts, cfg.num_responses);
        const TrainReport report = train(opt, loss, init, task.ref, task.reward, data);

        double final_tv = 0.0;
        for (std::size_t x = 0; x < cfg.num_prompts; ++x) {
            const auto pi_theta = policy_distribution(report.final_policy, x);
            const auto pi_star = optimal_policy(task.ref, task.reward, task.beta_star, x);
            final_tv += tv_distance(pi_theta, pi_star);
        }
        final_tv /= static_cast<double>(cfg.num_prompts);

        const double seconds =
            cfg.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                       : 0.0;
        table.rows[i] = {cfg.generators[i], report.final_tv(), final_tv,
                         static_cast<std::uint64_t>(report.steps_taken), seconds};
    });
    return table;
}

ResultTable run_theorem2(const ExperimentConfig& cfg) {
    if (cfg.ks.empty()) throw ConfigError("run_theorem2: empty K list");
    const SyntheticTask task = task_from_config(cfg);
    const TabularPolicy theta = random_policy(task, cfg.seed + 1);

    // Exact per-generator E_x D_f(pi_hat_theta || pi_hat_star).
    std::vector<Generator> gens;
    for (const auto& name : cfg.generators) gens.push_back(Generator::parse(name));
    std::vector<double> exact(gens.size(), 0.0);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        for (std::size_t x = 0; x < cfg.num_prompts; ++x) {
            const auto hat_theta = geometric_mixture(theta, task.ref, cfg.beta, x);
            const auto hat_star = optimal_policy(task.ref, task.reward, cfg.beta, x, true);
            exact[gi] += exact_f_divergence(gens[gi], hat_theta, hat_star);
        }
        exact[gi] /= static_cast<double>(cfg.num_prompts);
    }

    ResultTable table;
    table.columns = {"generator", "k", "median_abs_err", "iqr"};
    table.rows.resize(gens.size() * cfg.ks.size());
    parallel_map(gens.size() * cfg.ks.size(), [&](std::size_t idx) {
        const std::size_t gi = idx / cfg.ks.size();
        const std::size_t ki = idx % cfg.ks.size();
        const std::size_t k = cfg.ks[ki];
        std::vector<double> errors(cfg.num_seeds);
        for (std::size_t s = 0; s < cfg.num_seeds; ++s) {
            Rng rng(cfg.seed * 1000003 + s * 9176 + k);
            double estimate = 0.0;
            for (std::size_t x = 0; x < cfg.num_prompts; ++x) {
                const auto ref_probs = policy_distribution(task.ref, x);
                std::vector<double> g(k), r(k);
                for (std::size_t j = 0; j < k; ++j) {
                    // i.i.d. with replacement, per the theorem's premise
                    const std::size_t y = rng.categorical(ref_probs.probs);
                    g[j] = log_ratio_g(theta, task.ref, cfg.beta, x, y);
                    r[j] = task.reward(x, y);
                }
                estimate += exact_f_divergence(gens[gi], Distribution{softmax(g)},
                                               Distribution{softmax(r)});
            }
            estimate /= static_cast<double>(cfg.num_prompts);
            errors[s] = std::fabs(estimate - exact[gi]);
        }
        table.rows[idx] = {gens[gi].name(), static_cast<std::uint64_t>(k), median(errors),
                           quantile(errors, 0.75) - quantile(errors, 0.25)};
    });
    return table;
}

ResultTable run_equivalence(const ExperimentConfig& cfg) {
    const SyntheticTask task = task_from_config(cfg);
    const TabularPolicy theta = random_policy(task, cfg.seed + 1);

    // 1000 seeded random records, evaluated one at a time for pointwise gaps.
    Rng rng(cfg.seed + 2);
    std::vector<PairwiseRecord> records;
    for (std::size_t i = 0; i < 1000; ++i) {
        PairwiseRecord rec;
        rec.prompt = rng.index(cfg.num_prompts);
        rec.winner = rng.index(cfg.num_responses);
        do {
            rec.loser = rng.index(cfg.num_responses);
        } while (rec.loser == rec.winner);
        records.push_back(rec);
    }

    auto single = [&](const LossConfig& loss, const PairwiseRecord& rec) {
        PairwiseBatch b;
        b.records.push_back(rec);
        return fpo_loss_pairwise_smoothed(loss, theta, task.ref, b).loss;
    };

    LossConfig rkl0;
    rkl0.generator = Generator::reverse_kl();
    rkl0.beta = cfg.beta;
    rkl0.epsilon = 0.0;

    LossConfig fkl = rkl0;
    fkl.generator = Generator::forward_kl();
    fkl.epsilon = cfg.epsilon;

    LossConfig alpha_lo = fkl;
    alpha_lo.generator = Generator::alpha_divergence(1e-4);
    alpha_lo.epsilon = 0.1;
    LossConfig fkl_eps = fkl;
    fkl_eps.epsilon = 0.1;
    LossConfig alpha_hi = alpha_lo;
    alpha_hi.generator = Generator::alpha_divergence(1.0 - 1e-4);
    LossConfig rkl_eps = fkl_eps;
    rkl_eps.generator = Generator::reverse_kl();
    LossConfig alpha_mid = fkl_eps;
    alpha_mid.generator = Generator::alpha_divergence(0.5);

    // Affine shifts of the generator must not change the loss.
    const double shift = 3.0;
    LossConfig shifted = fkl_eps;
    shifted.generator = Generator::custom(
        "fkl+affine", [shift](double u) { return u * std::log(u) + shift * (u - 1.0); },
        [shift](double u) { return std::log(u) + 1.0 + shift; }, true, -shift);

    double dpo_gap = 0.0, exo_gap = 0.0, alpha_fkl_gap = 0.0, alpha_rkl_gap = 0.0;
    double affine_gap = 0.0, alpha_mid_gap = 0.0;
    for (const auto& rec : records) {
        PairwiseBatch b;
        b.records.push_back(rec);
        dpo_gap = std::max(dpo_gap,
                           std::fabs(single(rkl0, rec) - dpo_loss(theta, task.ref, cfg.beta, b).loss));
        exo_gap = std::max(
            exo_gap,
            std::fabs(single(fkl, rec) - exo_loss(theta, task.ref, cfg.beta, cfg.epsilon, b).loss));
        alpha_fkl_gap = std::max(alpha_fkl_gap, std::fabs(single(alpha_lo, rec) - single(fkl_eps, rec)));
        alpha_rkl_gap = std::max(alpha_rkl_gap, std::fabs(single(alpha_hi, rec) - single(rkl_eps, rec)));
        affine_gap = std::max(affine_gap, std::fabs(single(shifted, rec) - single(fkl_eps, rec)));
        alpha_mid_gap = std::max(alpha_mid_gap, std::fabs(single(alpha_mid, rec) - single(fkl_eps, rec)));
    }

    ResultTable table;
    table.columns = {"check", "max_gap"};
    table.rows = {{std::string("dpo_recovery"), dpo_gap},
                  {std::string("exo_recovery"), exo_gap},
                  {std::string("alpha_endpoint_fkl"), alpha_fkl_gap},
                  {std::string("alpha_endpoint_rkl"), alpha_rkl_gap},
                  {std::string("affine_invariance"), affine_gap},
                  {std::string("alpha_mid_vs_fkl_nonvacuous"), alpha_mid_gap}};
    return table;
}

ResultTable run_alpha_sweep(const ExperimentConfig& cfg) {
    if (cfg.alphas.empty()) throw ConfigError("run_alpha_sweep: empty alpha list");
    const SyntheticTask task = task_from_config(cfg);
    const PairwiseBatch data = sample_preferences(task, cfg.num_preferences, cfg.seed + 3);

    ResultTable table;
    table.columns = {"alpha", "final_loss", "final_tv_hat", "win_proxy"};
    table.rows.resize(cfg.alphas.size());
    parallel_map(cfg.alphas.size(), [&](std::size_t i) {
        LossConfig loss;
        loss.generator = Generator::alpha_divergence(cfg.alphas[i]);
        loss.variant = LossVariant::PairwiseSmoothed;
        loss.beta = cfg.beta;
        loss.epsilon = cfg.epsilon;

        OptimizerConfig opt;
        opt.learning_rate = cfg.learning_rate;
        opt.max_steps = cfg.max_steps;

        const TabularPolicy init =
            cfg.init_from_ref ? task.ref : TabularPolicy::zeros(cfg.num_prompts, cfg.num_responses);
        const TrainReport report = train(opt, loss, init, task.ref, task.reward, data);
        table.rows[i] = {std::string(format_double(cfg.alphas[i])), report.final_loss(),
                         report.final_tv(), win_proxy(report.final_policy, task)};
    });
    return table;
}

// Two-parameter Adam minimization with central-difference gradients.
BehaviorFit fit_density(const Generator& gen, const GridDensityFamily& family,
                        const Distribution& target, double mu0, double log_sigma0) {
    auto objective = [&](double mu, double ls) {
        return exact_f_divergence(gen, family.density(mu, ls), target);
    };
    double mu = mu0, ls = log_sigma0;
    double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
    const double lr = 0.05, b1 = 0.9, b2 = 0.999, eps = 1e-8, h = 1e-5;
    for (std::size_t step = 1; step <= 3000; ++step) {
        const double g1 = (objective(mu + h, ls) - objective(mu - h, ls)) / (2.0 * h);
        const double g2 = (objective(mu, ls + h) - objective(mu, ls - h)) / (2.0 * h);
        m1 = b1 * m1 + (1.0 - b1) * g1;
        m2 = b1 * m2 + (1.0 - b1) * g2;
        v1 = b2 * v1 + (1.0 - b2) * g1 * g1;
        v2 = b2 * v2 + (1.0 - b2) * g2 * g2;
        const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
        mu -= lr * (m1 / c1) / (std::sqrt(v1 / c1) + eps);
        ls -= lr * (m2 / c1) / (std::sqrt(v2 / c2) + eps);
        if (!std::isfinite(mu) || !std::isfinite(ls))
            throw OptimizationError("fit_density: parameters diverged");
    }
    return {mu, ls, objective(mu, ls)};
}

ResultTable run_divergence_behavior(const ExperimentConfig& cfg) {
    GridDensityFamily family;
    const std::size_t n = 101;
    for (std::size_t i = 0; i < n; ++i)
        family.grid.push_back(-6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(n - 1));

    // Bimodal target: equal-weight Gaussians at +-2. Component sigma 0.5
    // keeps the modes well separated; a brute-force (mu, sigma) grid search
    // confirms the single-Gaussian optimum is single-mode for u ln u and
    // covering for -ln u at this separation.
    const double comp_sigma = 0.5;
    std::vector<double> q(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = family.grid[i];
        const double zl = (x + 2.0) / comp_sigma;
        const double zr = (x - 2.0) / comp_sigma;
        q[i] = 0.5 * std::exp(-0.5 * zl * zl) + 0.5 * std::exp(-0.5 * zr * zr);
        total += q[i];
    }
    for (double& v : q) v /= total;
    const Distribution target{q};

    // Basin split at the target's interior minimum between the two modes.
    const std::size_t mode1 =
        std::max_element(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(n / 2)) - q.begin();
    const std::size_t mode2 =
        std::max_element(q.begin() + static_cast<std::ptrdiff_t>(n / 2), q.end()) - q.begin();
    const std::size_t split =
        std::min_element(q.begin() + static_cast<std::ptrdiff_t>(mode1),
                         q.begin() + static_cast<std::ptrdiff_t>(mode2)) -
        q.begin();

    ResultTable table;
    table.columns = {"generator", "mass_basin_1", "mass_basin_2", "mu", "sigma"};
    table.rows.resize(cfg.generators.size());
    parallel_map(cfg.generators.size(), [&](std::size_t i) {
        const auto gen = Generator::parse(cfg.generators[i]);
        BehaviorFit best;
        bool have = false;
        for (double mu0 : {-2.0, 0.0, 2.0}) {
            try {
                const BehaviorFit fit = fit_density(gen, family, target, mu0, 0.0);
                if (!have || fit.loss < best.loss) {
                    best = fit;
                    have = true;
                }
            } catch (const OptimizationError&) {
            }
        }
        if (!have) throw OptimizationError("run_divergence_behavior: all starts failed for " +
                                           cfg.generators[i]);
        const Distribution fitted = family.density(best.mu, best.log_sigma);
        double mass1 = 0.5 * fitted[split], mass2 = 0.5 * fitted[split];
        for (std::size_t j = 0; j < split; ++j) mass1 += fitted[j];
        for (std::size_t j = split + 1; j < n; ++j) mass2 += fitted[j];
        table.rows[i] = {cfg.generators[i], mass1, mass2, best.mu, std::exp(best.log_sigma)};
    });
    return table;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"f-divergence preference optimization experiments over tabular policies"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    cfg.format.clear();  // inferred from the output extension unless --format is given
    std::string generators_csv, alphas_csv, ks_csv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--out", cfg.out, "output file path")->required();
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--prompts", cfg.num_prompts, "number of prompts");
        sub->add_option("--responses", cfg.num_responses, "responses per prompt");
        sub->add_option("--beta", cfg.beta, "log-ratio scale beta");
        sub->add_option("--epsilon", cfg.epsilon, "label smoothing epsilon");
        sub->add_option("--reward-scale", cfg.reward_scale, "reward range half-width");
        sub->add_option("--generators", generators_csv, "comma-separated generator names");
        sub->add_option("--steps", cfg.max_steps, "max optimization steps");
        sub->add_option("--lr", cfg.learning_rate, "learning rate");
        sub->add_flag("--init-ref", cfg.init_from_ref, "initialize training from the reference logits");
        sub->add_flag("--timing", cfg.timing, "emit real wall-clock seconds (not byte-stable)");
        return sub;
    };

    auto* gen_check = add_common(app.add_subcommand("generator-check", "generator validity sweep"));
    auto* theorem1 = add_common(app.add_subcommand("theorem1", "convergence to the exact optimum"));
    auto* theorem2 = add_common(app.add_subcommand("theorem2", "Monte Carlo estimator consistency"));
    theorem2->add_option("--ks", ks_csv, "comma-separated K values");
    theorem2->add_option("--num-seeds", cfg.num_seeds, "Monte Carlo repetitions per K");
    auto* equivalence = add_common(app.add_subcommand("equivalence", "DPO/EXO/alpha recovery gaps"));
    auto* alpha_sweep = add_common(app.add_subcommand("alpha-sweep", "train across alpha values"));
    alpha_sweep->add_option("--alphas", alphas_csv, "comma-separated alpha values");
    alpha_sweep->add_option("--num-preferences", cfg.num_preferences, "preference records");
    auto* behavior =
        add_common(app.add_subcommand("divergence-behavior", "mode-seeking vs mode-covering fits"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (!generators_csv.empty()) cfg.generators = split_list(generators_csv);
        if (!alphas_csv.empty()) {
            cfg.alphas.clear();
            for (const auto& a : split_list(alphas_csv)) cfg.alphas.push_back(std::stod(a));
        }
        if (!ks_csv.empty()) {
            cfg.ks.clear();
            for (const auto& k : split_list(ks_csv))
                cfg.ks.push_back(static_cast<std::size_t>(std::stoul(k)));
        }
        if (cfg.format.empty())
            cfg.format = cfg.out.size() > 5 && cfg.out.substr(cfg.out.size() - 5) == ".json"
                             ? "json"
                             : "csv";

        ResultTable table;
        std::string name;
        if (gen_check->parsed()) {
            name = "generator-check";
            table = run_generator_check(cfg);
        } else if (theorem1->parsed()) {
            name = "theorem1";
            table = run_theorem1(cfg);
        } else if (theorem2->parsed()) {
            name = "theorem2";
            table = run_theorem2(cfg);
        } else if (equivalence->parsed()) {
            name = "equivalence";
            table = run_equivalence(cfg);
        } else if (alpha_sweep->parsed()) {
            name = "alpha-sweep";
            table = run_alpha_sweep(cfg);
        } else if (behavior->parsed()) {
            name = "divergence-behavior";
            table = run_divergence_behavior(cfg);
        }
        write_file(cfg.out, table.render(cfg.format));
        std::cout << name << ": " << table.rows.size() << " rows -> " << cfg.out << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace fpo
