#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fpo/errors.hpp"
#include "fpo/harness.hpp"

using namespace fpo;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

double cell_double(const Cell& c) { return std::get<double>(c); }

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fpo");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("result table rendering") {
    ResultTable t;
    t.columns = {"name", "value", "count"};
    t.rows = {{std::string("a"), 0.5, std::uint64_t{3}}};
    const auto csv = t.to_csv();
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "name,value,count");
    CHECK(lines[1] == "a,0.5,3");
    const auto json = t.to_json();
    CHECK(json.find("\"name\": \"a\"") != std::string::npos);
    CHECK(json.find("\"count\": 3") != std::string::npos);
    CHECK(t.render("csv") == csv);
    CHECK(t.render("json") == json);
    CHECK_THROWS_AS(t.render("yaml"), ConfigError);
}

TEST_CASE("generator check sweep is clean for the stock generators") {
    ExperimentConfig cfg;
    const auto table = run_generator_check(cfg);
    REQUIRE(table.rows.size() == cfg.generators.size());
    for (const auto& row : table.rows) {
        CHECK(cell_double(row[1]) < 1e-12);
        CHECK(cell_double(row[2]) < 1e-9);
        CHECK(cell_double(row[3]) < 1e-5);
    }
}

TEST_CASE("optimum recovery experiment") {
    SUBCASE("zero-step runs keep the header and row count") {
        ExperimentConfig cfg;
        cfg.max_steps = 0;
        const auto table = run_theorem1(cfg);
        CHECK(split_lines(table.to_csv())[0] == "generator,final_tv_hat,final_tv,steps,seconds");
        CHECK(table.rows.size() == cfg.generators.size());
        for (const auto& row : table.rows) CHECK(cell_double(row[4]) == 0.0);
    }
    SUBCASE("flat rewards from the reference start converge instantly") {
        ExperimentConfig cfg;
        cfg.reward_scale = 0.0;
        cfg.init_from_ref = true;
        cfg.generators = {"rkl"};
        const auto table = run_theorem1(cfg);
        CHECK(cell_double(table.rows[0][1]) < 1e-6);
        CHECK(cell_double(table.rows[0][2]) < 1e-6);
    }
    SUBCASE("a short real run drives TV down for every generator") {
        ExperimentConfig cfg;
        cfg.num_prompts = 2;
        cfg.num_responses = 4;
        cfg.max_steps = 2000;
        const auto table = run_theorem1(cfg);
        for (const auto& row : table.rows) CHECK(cell_double(row[1]) < 1e-4);
    }
}

TEST_CASE("monte carlo consistency experiment shrinks with K") {
    ExperimentConfig cfg;
    cfg.num_prompts = 2;
    cfg.num_responses = 4;
    cfg.generators = {"fkl", "rkl"};
    cfg.ks = {2, 16, 128};
    cfg.num_seeds = 60;
    const auto table = run_theorem2(cfg);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t gi = 0; gi < 2; ++gi) {
        const double med_small = cell_double(table.rows[gi * 3][2]);
        const double med_large = cell_double(table.rows[gi * 3 + 2][2]);
        CHECK(med_large < med_small);
    }
    CHECK_THROWS_AS(run_theorem2([] {
                        ExperimentConfig c;
                        c.ks = {};
                        return c;
                    }()),
                    ConfigError);
}

TEST_CASE("equivalence gaps") {
    ExperimentConfig cfg;
    const auto table = run_equivalence(cfg);
    REQUIRE(table.rows.size() == 6);
    CHECK(cell_double(table.rows[0][1]) < 1e-10);  // dpo
    CHECK(cell_double(table.rows[1][1]) < 1e-10);  // exo
    CHECK(cell_double(table.rows[2][1]) < 1e-3);   // alpha -> fkl endpoint
    CHECK(cell_double(table.rows[3][1]) < 1e-3);   // alpha -> rkl endpoint
    CHECK(cell_double(table.rows[4][1]) < 1e-10);  // affine shift
    CHECK(cell_double(table.rows[5][1]) > 1e-2);   // mid alpha differs from fkl
}

TEST_CASE("alpha sweep rows are well formed") {
    ExperimentConfig cfg;
    cfg.num_prompts = 2;
    cfg.num_responses = 4;
    cfg.alphas = {0.2, 0.8};
    cfg.num_preferences = 400;
    cfg.max_steps = 0;
    cfg.init_from_ref = true;
    const auto table = run_alpha_sweep(cfg);
    REQUIRE(table.rows.size() == 2);
    for (const auto& row : table.rows) {
        // Untrained reference policy: BT win proxy against itself is exactly 1/2.
        CHECK(cell_double(row[3]) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cell_double(row[1]) > 0.0);
        CHECK(cell_double(row[2]) >= 0.0);
    }
}

TEST_CASE("density fitting recovers a unimodal target") {
    GridDensityFamily family;
    for (int i = 0; i <= 100; ++i) family.grid.push_back(-6.0 + 0.12 * i);
    const auto target = family.density(1.0, std::log(0.8));
    for (const auto& gen : {Generator::forward_kl(), Generator::reverse_kl()}) {
        const auto fit = fit_density(gen, family, target, 0.0, 0.0);
        CHECK(std::fabs(fit.mu - 1.0) < 0.12);  // within one grid cell
        CHECK(std::fabs(std::exp(fit.log_sigma) - 0.8) < 0.1);
        CHECK(fit.loss < 1e-3);
    }
}

TEST_CASE("mode seeking versus mode covering") {
    ExperimentConfig cfg;
    cfg.generators = {"fkl", "rkl"};
    const auto table = run_divergence_behavior(cfg);
    REQUIRE(table.rows.size() == 2);
    const double fkl_max =
        std::max(cell_double(table.rows[0][1]), cell_double(table.rows[0][2]));
    CHECK(fkl_max >= 0.8);
    CHECK(cell_double(table.rows[1][1]) >= 0.2);
    CHECK(cell_double(table.rows[1][2]) >= 0.2);
}

TEST_CASE("cli entry point") {
    const std::string path = "cli_test_out.csv";
    SUBCASE("theorem1 writes the pinned schema") {
        CHECK(run_cli({"theorem1", "--seed", "1", "--out", path, "--steps", "0"}) == 0);
        const auto lines = split_lines(slurp(path));
        REQUIRE(!lines.empty());
        CHECK(lines[0] == "generator,final_tv_hat,final_tv,steps,seconds");
        std::remove(path.c_str());
    }
    SUBCASE("json format is inferred from the extension") {
        const std::string jpath = "cli_test_out.json";
        CHECK(run_cli({"generator-check", "--out", jpath}) == 0);
        CHECK(slurp(jpath).find("\"generator\"") != std::string::npos);
        std::remove(jpath.c_str());
    }
    SUBCASE("bad generator name is a usage error") {
        CHECK(run_cli({"theorem1", "--out", path, "--generators", "nope"}) == 1);
    }
    SUBCASE("unknown subcommand is a usage error") {
        CHECK(run_cli({"frobnicate", "--out", path}) == 1);
    }
    SUBCASE("identical invocations write identical bytes") {
        const std::string a = "cli_det_a.csv", b = "cli_det_b.csv";
        REQUIRE(run_cli({"equivalence", "--seed", "5", "--out", a}) == 0);
        REQUIRE(run_cli({"equivalence", "--seed", "5", "--out", b}) == 0);
        CHECK(slurp(a) == slurp(b));
        std::remove(a.c_str());
        std::remove(b.c_str());
    }
}
