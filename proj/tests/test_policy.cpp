#include <doctest.h>

#include <cmath>
#include <limits>

#include "fpo/errors.hpp"
#include "fpo/policy.hpp"
#include "fpo/random.hpp"

using namespace fpo;

namespace {

TabularPolicy policy_from_logits(std::vector<double> logits, std::size_t prompts,
                                 std::size_t responses) {
    TabularPolicy p = TabularPolicy::zeros(prompts, responses);
    p.logits = std::move(logits);
    return p;
}

Distribution random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> logits(n);
    for (double& v : logits) v = rng.normal();
    return Distribution{softmax(logits)};
}

}  // namespace

TEST_CASE("policy_distribution") {
    const auto uniform = policy_from_logits({0, 0, 0}, 1, 3);
    for (double p : policy_distribution(uniform, 0).probs)
        CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto skewed = policy_from_logits({std::log(2.0), 0.0}, 1, 2);
    const auto d = policy_distribution(skewed, 0);
    CHECK(d[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto extreme = policy_from_logits({1000.0, 0.0}, 1, 2);
    const auto e = policy_distribution(extreme, 0);
    CHECK(std::isfinite(e[0]));
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(policy_distribution(uniform, 1), IndexError);
}

TEST_CASE("geometric_mixture") {
    Rng rng(5);
    TabularPolicy ref = TabularPolicy::zeros(2, 4);
    for (double& v : ref.logits) v = rng.normal();

    SUBCASE("identical policies are a fixed point") {
        const auto mix = geometric_mixture(ref, ref, 0.3, 1);
        const auto base = policy_distribution(ref, 1);
        CHECK(tv_distance(mix, base) < 1e-14);
    }
    SUBCASE("beta = 1 returns the policy") {
        TabularPolicy policy = ref;
        for (double& v : policy.logits) v += rng.normal();
        const auto mix = geometric_mixture(policy, ref, 1.0, 0);
        CHECK(tv_distance(mix, policy_distribution(policy, 0)) < 1e-14);
    }
    SUBCASE("two-point arithmetic oracle") {
        // pi = [0.8, 0.2], ref = [0.5, 0.5], beta = 0.5 -> normalize(sqrt .4, sqrt .1)
        const auto policy = policy_from_logits({std::log(0.8), std::log(0.2)}, 1, 2);
        const auto unif = policy_from_logits({std::log(0.5), std::log(0.5)}, 1, 2);
        const auto mix = geometric_mixture(policy, unif, 0.5, 0);
        const double a = std::sqrt(0.4), b = std::sqrt(0.1);
        CHECK(mix[0] == doctest::Approx(a / (a + b)).epsilon(1e-12));
        CHECK(mix[1] == doctest::Approx(b / (a + b)).epsilon(1e-12));
    }
    SUBCASE("shape mismatch") {
        const auto other = TabularPolicy::zeros(2, 3);
        CHECK_THROWS_AS(geometric_mixture(ref, other, 0.5, 0), ShapeError);
    }
}

TEST_CASE("optimal_policy") {
    Rng rng(9);
    TabularPolicy ref = TabularPolicy::zeros(3, 5);
    for (double& v : ref.logits) v = rng.normal();

    SUBCASE("zero reward leaves the reference unchanged") {
        RewardTable r{3, 5, std::vector<double>(15, 0.0)};
        for (std::size_t x = 0; x < 3; ++x)
            CHECK(tv_distance(optimal_policy(ref, r, 0.7, x), policy_distribution(ref, x)) < 1e-14);
    }
    SUBCASE("analytic two-point case") {
        const auto unif = TabularPolicy::zeros(1, 2);
        const double beta = 0.7;
        RewardTable r{1, 2, {beta * std::log(3.0), 0.0}};
        const auto opt = optimal_policy(unif, r, beta, 0);
        CHECK(opt[0] == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(opt[1] == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("brute-force normalization oracle") {
        RewardTable r{3, 5, std::vector<double>(15)};
        for (double& v : r.values) v = rng.uniform(-3.0, 3.0);
        const double beta = 0.5;
        for (std::size_t x = 0; x < 3; ++x) {
            const auto opt = optimal_policy(ref, r, beta, x);
            const auto base = policy_distribution(ref, x);
            std::vector<double> expected(5);
            double z = 0.0;
            for (std::size_t y = 0; y < 5; ++y) {
                expected[y] = base[y] * std::exp(r(x, y) / beta);
                z += expected[y];
            }
            for (std::size_t y = 0; y < 5; ++y)
                CHECK(opt[y] == doctest::Approx(expected[y] / z).epsilon(1e-12));
        }
    }
    SUBCASE("proportionality identity with a single prompt-wide constant") {
        RewardTable r{3, 5, std::vector<double>(15)};
        for (double& v : r.values) v = rng.uniform(-3.0, 3.0);
        const double beta = 0.3;
        for (std::size_t x = 0; x < 3; ++x) {
            const auto opt = optimal_policy(ref, r, beta, x);
            const auto base = policy_distribution(ref, x);
            const double z0 = base[0] * std::exp(r(x, 0) / beta) / opt[0];
            for (std::size_t y = 1; y < 5; ++y) {
                const double zy = base[y] * std::exp(r(x, y) / beta) / opt[y];
                CHECK(zy == doctest::Approx(z0).epsilon(1e-10));
            }
        }
    }
    SUBCASE("geometric mixture of the optimum reproduces the hatted optimum") {
        RewardTable r{3, 5, std::vector<double>(15)};
        for (double& v : r.values) v = rng.uniform(-2.0, 2.0);
        const double beta = 0.6;
        for (std::size_t x = 0; x < 3; ++x) {
            // Lift pi* into logits so it can enter geometric_mixture.
            TabularPolicy star = ref;
            const auto opt = optimal_policy(ref, r, beta, x);
            for (std::size_t y = 0; y < 5; ++y) star.logit(x, y) = std::log(opt[y]);
            const auto mixed = geometric_mixture(star, ref, beta, x);
            const auto hatted = optimal_policy(ref, r, beta, x, true);
            CHECK(tv_distance(mixed, hatted) < 1e-10);
        }
    }
}

TEST_CASE("log_ratio_g") {
    Rng rng(12);
    TabularPolicy ref = TabularPolicy::zeros(2, 4);
    TabularPolicy policy = ref;
    for (double& v : ref.logits) v = rng.normal();
    for (double& v : policy.logits) v = rng.normal();

    for (std::size_t y = 0; y < 4; ++y) CHECK(log_ratio_g(ref, ref, 2.0, 0, y) == 0.0);

    const double beta = 2.0;
    for (std::size_t x = 0; x < 2; ++x) {
        const auto lp = policy_log_distribution(policy, x);
        const auto lr = policy_log_distribution(ref, x);
        for (std::size_t y = 0; y < 4; ++y)
            CHECK(log_ratio_g(policy, ref, beta, x, y) ==
                  doctest::Approx(beta * (lp[y] - lr[y])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(log_ratio_g(policy, ref, beta, 0, 9), IndexError);
}

TEST_CASE("exact_f_divergence closed-form values") {
    const Distribution p{{0.5, 0.5}};
    const Distribution q{{0.25, 0.75}};
    // sum p ln(p/q)
    const double fkl_expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
    CHECK(exact_f_divergence(Generator::forward_kl(), p, q) ==
          doctest::Approx(fkl_expected).epsilon(1e-12));
    // sum q ln(q/p)
    const double rkl_expected = 0.25 * std::log(0.5) + 0.75 * std::log(1.5);
    CHECK(exact_f_divergence(Generator::reverse_kl(), p, q) ==
          doctest::Approx(rkl_expected).epsilon(1e-12));
    CHECK(exact_f_divergence(Generator::forward_kl(), p, q) == doctest::Approx(0.14384).epsilon(1e-4));
    CHECK(exact_f_divergence(Generator::reverse_kl(), p, q) == doctest::Approx(0.13081).epsilon(1e-4));
}

TEST_CASE("divergence nonnegativity and identity of indiscernibles") {
    Rng rng(31);
    const auto gens = named_generators(0.4);
    for (int i = 0; i < 1000; ++i) {
        const auto& gen = gens[static_cast<std::size_t>(i) % gens.size()];
        const std::size_t n = 2 + rng.index(6);
        const auto p = random_distribution(rng, n);
        const auto q = random_distribution(rng, n);
        const double d = exact_f_divergence(gen, p, q);
        CHECK(d >= -1e-12);
        if (tv_distance(p, q) < 1e-9)
            CHECK(std::fabs(d) < 1e-12);
        else
            CHECK(d > 0.0);
        CHECK(std::fabs(exact_f_divergence(gen, p, p)) < 1e-12);
    }
}

TEST_CASE("zero support handling") {
    const Distribution p{{0.5, 0.5, 0.0}};
    const Distribution q{{0.5, 0.5, 0.0}};
    CHECK(exact_f_divergence(Generator::forward_kl(), p, q) == doctest::Approx(0.0));
    const Distribution r{{0.25, 0.25, 0.5}};
    CHECK_THROWS_AS(exact_f_divergence(Generator::forward_kl(), r, q), SupportError);
    // rkl has zero slope at infinity: contribution vanishes
    CHECK(std::isfinite(exact_f_divergence(Generator::reverse_kl(), r, q)));
    CHECK_THROWS_AS(exact_f_divergence(Generator::forward_kl(), p, Distribution{{1.0, 0.0}}),
                    SupportError);
}

TEST_CASE("tv_distance") {
    CHECK(tv_distance(Distribution{{0.5, 0.5}}, Distribution{{0.5, 0.5}}) == 0.0);
    CHECK(tv_distance(Distribution{{1.0, 0.0}}, Distribution{{0.0, 1.0}}) == 1.0);
    CHECK(tv_distance(Distribution{{0.5, 0.5}}, Distribution{{0.25, 0.75}}) == doctest::Approx(0.25));
}

TEST_CASE("json round trip is bit exact") {
    Rng rng(77);
    TabularPolicy p = TabularPolicy::zeros(2, 3);
    for (double& v : p.logits) v = rng.normal() * 1e3;
    for (std::size_t& l : p.lengths) l = 1 + rng.index(9);
    const auto back = TabularPolicy::from_json(p.to_json());
    CHECK(back.logits == p.logits);
    CHECK(back.lengths == p.lengths);

    RewardTable r{2, 3, std::vector<double>(6)};
    for (double& v : r.values) v = rng.uniform(-3.0, 3.0);
    const auto rback = RewardTable::from_json(r.to_json());
    CHECK(rback.values == r.values);
}

TEST_CASE("validation errors") {
    TabularPolicy p = TabularPolicy::zeros(1, 2);
    p.logits[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.logits[0] = 0.0;
    p.lengths[1] = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    const Distribution leaky{{0.5, 0.4}};
    CHECK_THROWS_AS(leaky.validate(), DomainError);
    const Distribution negative{{-0.1, 1.1}};
    CHECK_THROWS_AS(negative.validate(), DomainError);
}
