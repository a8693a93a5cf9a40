#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sanas/artifacts.hpp"
#include "sanas/config.hpp"
#include "sanas/driver.hpp"
#include "sanas/errors.hpp"
#include "sanas/evaluation.hpp"
#include "sanas/experiments.hpp"
#include "sanas/metrics.hpp"

using namespace sanas;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::path("/tmp") / ("sanas-drv-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_num(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

RunConfig small_config() {
    RunConfig cfg;
    cfg.space = reduced_space();
    cfg.n_init = 20;
    cfg.iterations = 2;
    cfg.batch = 4;
    cfg.seed = 7;
    cfg.inner.population = 20;
    cfg.inner.generations = 8;
    return cfg;
}

void check_equal_runs(const RunResult& a, const RunResult& b) {
    REQUIRE(a.archive.size() == b.archive.size());
    for (std::size_t i = 0; i < a.archive.size(); ++i) {
        const auto& x = a.archive.at(i);
        const auto& y = b.archive.at(i);
        CHECK(x.genome == y.genome);
        CHECK(x.accuracy == y.accuracy);  // bitwise
        CHECK(x.complexities == y.complexities);
        CHECK(x.iteration == y.iteration);
    }
    REQUIRE(a.metrics.size() == b.metrics.size());
    for (std::size_t i = 0; i < a.metrics.size(); ++i) {
        const auto& x = a.metrics[i];
        const auto& y = b.metrics[i];
        CHECK(x.iteration == y.iteration);
        CHECK(x.evaluations == y.evaluations);
        CHECK(x.hypervolume == y.hypervolume);
        CHECK(x.model == y.model);
        CHECK(same_num(x.cv_tau, y.cv_tau));
        CHECK(same_num(x.batch_spearman, y.batch_spearman));
        CHECK(same_num(x.batch_rmse, y.batch_rmse));
        CHECK(same_num(x.best_scalar, y.best_scalar));
    }
    CHECK(a.front0 == b.front0);
    CHECK(a.trajectory == b.trajectory);
    CHECK(same_num(a.best_value, b.best_value));
}

// 32-genome space: one searched block over two resolutions
SearchSpace tiny_space() {
    std::array<BlockChoices, kBlockCount> blocks;
    blocks[0] = BlockChoices{{2}, {1, 2}, {1, 2}};
    for (int b = 1; b < kBlockCount; ++b) blocks[b] = BlockChoices{{2}, {1}, {1}};
    return SearchSpace({0, 1}, blocks);
}

} // namespace

TEST_CASE("batch selection is greedy max-min after the predicted best") {
    // highest prediction first, then the candidate farthest from everything chosen
    auto picked = subset_select({0.5, 0.9, 0.7}, {{100.0}, {110.0}, {500.0}}, {{105.0}}, {400.0}, 2);
    CHECK(picked == std::vector<std::size_t>{1, 2});
    // batch of one: only the argmax
    CHECK(subset_select({0.5, 0.9, 0.7}, {{100.0}, {110.0}, {500.0}}, {}, {400.0}, 1) ==
          std::vector<std::size_t>{1});
    // prediction ties break toward the lower index
    CHECK(subset_select({0.9, 0.9}, {{1.0}, {2.0}}, {}, {1.0}, 1) == std::vector<std::size_t>{0});
    // batch larger than the pool returns everything
    CHECK(subset_select({0.1, 0.2}, {{1.0}, {2.0}}, {}, {1.0}, 10).size() == 2);
    CHECK_THROWS_AS(subset_select({}, {}, {}, {1.0}, 3), EmptyAfterDedup);

    // distance ties also break toward the lower index: two candidates mirror
    // the front point symmetrically
    auto sym = subset_select({0.9, 0.1, 0.1}, {{10.0}, {6.0}, {14.0}}, {}, {10.0}, 2);
    CHECK(sym == std::vector<std::size_t>{0, 1});
}

TEST_CASE("config validation rejects nonsense") {
    RunConfig cfg = small_config();
    cfg.validate();

    cfg.n_init = 19;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.batch = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.iterations = -1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.objectives = {"madds", "accuracy"};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.objectives = {"accuracy"};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.objectives = {"accuracy", "watts"};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.objectives = {"accuracy", "madds", "madds"};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.hv_margin = 1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.evaluator.kind = "quantum";
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    cfg.evaluator.kind = "tabular";  // requires a table path
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config();
    CHECK_THROWS_AS(cfg.validate(true), InvalidConfig);  // scalar mode needs a target
    cfg.scalar.target = 1e8;
    cfg.scalar.objective = "params";  // not among the run's objectives
    CHECK_THROWS_AS(cfg.validate(true), InvalidConfig);
    cfg.scalar.objective = "madds";
    cfg.validate(true);
}

TEST_CASE("search run invariants") {
    RunConfig cfg = small_config();
    const auto res = run_search(cfg);

    CHECK(res.archive.size() >= std::size_t(cfg.n_init));
    CHECK(res.archive.size() <= std::size_t(cfg.n_init + cfg.iterations * cfg.batch));
    REQUIRE(res.metrics.size() == std::size_t(cfg.iterations + 1));
    CHECK(res.metrics[0].iteration == 0);
    CHECK(res.metrics[0].evaluations == cfg.n_init);
    CHECK(res.metrics[0].model.empty());

    std::set<std::string> texts;
    for (const auto& e : res.archive.entries()) {
        CHECK(cfg.space.contains(e.genome));
        texts.insert(encode_text(e.genome));
        CHECK(e.accuracy == synthetic_accuracy(e.genome));
        const auto c = complexity(e.genome, cfg.backbone);
        REQUIRE(e.complexities.size() == 1);
        CHECK(e.complexities[0] == double(c.madds));
        CHECK(e.evaluator_id == "synthetic-smooth");
        CHECK(e.iteration >= 0);
        CHECK(e.iteration <= cfg.iterations);
    }
    CHECK(texts.size() == res.archive.size());

    for (std::size_t i = 1; i < res.metrics.size(); ++i) {
        CHECK(res.metrics[i].hypervolume >= res.metrics[i - 1].hypervolume);
        CHECK(res.metrics[i].evaluations >= res.metrics[i - 1].evaluations);
        CHECK_FALSE(res.metrics[i].model.empty());
    }
    // recorded hypervolume is the archive's volume in the frozen box
    CHECK(res.metrics.back().hypervolume ==
          doctest::Approx(hypervolume(res.archive.min_objectives(), res.hv, cfg.seed)).epsilon(1e-12));

    // front0 is exactly the archive's non-dominated subset
    const auto want = res.archive.front_indices();
    CHECK(res.front0 == want);
    CHECK(res.last_model.has_value());

    // two runs with the same config agree bitwise; a reseeded run does not
    check_equal_runs(res, run_search(cfg));
    RunConfig other = cfg;
    other.seed = 8;
    const auto res2 = run_search(other);
    bool identical = res2.archive.size() == res.archive.size();
    if (identical)
        for (std::size_t i = 0; i < res.archive.size(); ++i)
            identical = identical && res.archive.at(i).genome == res2.archive.at(i).genome;
    CHECK_FALSE(identical);
}

TEST_CASE("zero iterations stop after the initial design") {
    RunConfig cfg = small_config();
    cfg.iterations = 0;
    const auto res = run_search(cfg);
    CHECK(res.archive.size() == std::size_t(cfg.n_init));
    CHECK(res.metrics.size() == 1);
    CHECK_FALSE(res.last_model.has_value());
}

TEST_CASE("hooks can stop a run early") {
    RunConfig cfg = small_config();
    cfg.iterations = 5;
    RunHooks hooks;
    hooks.continue_after = [](int iteration, const Archive&) { return iteration < 2; };
    const auto res = run_search(cfg, hooks);
    CHECK(res.metrics.size() == 3);  // init + iterations 1 and 2
    CHECK(res.metrics.back().iteration == 2);
}

TEST_CASE("checkpoint files detect tampering") {
    const fs::path dir = fresh_dir("ckpt");
    const std::string path = (dir / "state.json").string();
    nlohmann::json payload{{"mode", "pareto"}, {"value", 42}};
    write_checkpoint_file(path, payload);
    CHECK(read_checkpoint_file(path) == payload);

    auto doc = nlohmann::json::parse(slurp(path));
    doc["payload"]["value"] = 43;
    std::ofstream(path) << doc.dump();
    CHECK_THROWS_AS(read_checkpoint_file(path), CorruptCheckpoint);

    doc["payload"]["value"] = 42;
    doc["hash"] = "0000000000000000";
    std::ofstream(path) << doc.dump();
    CHECK_THROWS_AS(read_checkpoint_file(path), CorruptCheckpoint);

    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(read_checkpoint_file(path), CorruptCheckpoint);
    std::ofstream(path) << "{\"payload\": 1}";
    CHECK_THROWS_AS(read_checkpoint_file(path), CorruptCheckpoint);
    CHECK_THROWS_AS(read_checkpoint_file((dir / "absent.json").string()), CorruptCheckpoint);
}

TEST_CASE("an interrupted run resumes to the exact uninterrupted result") {
    const fs::path dir = fresh_dir("resume");
    RunConfig cfg = small_config();
    cfg.iterations = 6;
    cfg.checkpoint_path = (dir / "a.json").string();
    const auto full = run_search(cfg);

    RunConfig cfg_b = cfg;
    cfg_b.checkpoint_path = (dir / "b.json").string();
    RunHooks stop_at_3;
    stop_at_3.continue_after = [](int iteration, const Archive&) { return iteration < 3; };
    const auto partial = run_search(cfg_b, stop_at_3);
    CHECK(partial.metrics.size() == 4);

    const auto resumed = resume_search(cfg_b, cfg_b.checkpoint_path);
    check_equal_runs(full, resumed);

    // resuming a finished run is a no-op returning the same result
    check_equal_runs(full, resume_search(cfg, cfg.checkpoint_path));
}

TEST_CASE("resume rejects mismatched config and mode") {
    const fs::path dir = fresh_dir("resume-guard");
    RunConfig cfg = small_config();
    cfg.checkpoint_path = (dir / "p.json").string();
    run_search(cfg);

    RunConfig edited = cfg;
    edited.seed = 1234;
    CHECK_THROWS_AS(resume_search(edited, cfg.checkpoint_path), CorruptCheckpoint);

    RunConfig scalar_cfg = cfg;
    scalar_cfg.checkpoint_path = (dir / "s.json").string();
    scalar_cfg.scalar.target = 1.2e8;
    run_scalarized(scalar_cfg);
    CHECK_THROWS_AS(resume_search(scalar_cfg, scalar_cfg.checkpoint_path), CorruptCheckpoint);
    RunConfig as_scalar = cfg;  // valid scalar config pointed at a pareto checkpoint
    as_scalar.scalar.target = 1.2e8;
    CHECK_THROWS_AS(resume_scalarized(as_scalar, cfg.checkpoint_path), CorruptCheckpoint);
}

TEST_CASE("table extras override the analytic complexities") {
    const fs::path dir = fresh_dir("tabular");
    SearchSpace space = tiny_space();
    const std::string table = (dir / "table.csv").string();
    {
        std::ofstream out(table);
        out << "genome,accuracy,madds\n";
        int i = 0;
        space.enumerate([&](const Genome& g) {
            out << encode_text(g) << "," << 0.3 + 0.01 * i << "," << 5000 + i << "\n";
            ++i;
        });
    }
    RunConfig cfg;
    cfg.space = space;
    cfg.n_init = 20;
    cfg.iterations = 0;
    cfg.evaluator.kind = "tabular";
    cfg.evaluator.table_path = table;
    const auto res = run_search(cfg);
    for (const auto& e : res.archive.entries()) {
        CHECK(e.evaluator_id == "tabular");
        CHECK(e.complexities[0] >= 5000.0);  // fabricated values, not analytic ones
        CHECK(e.complexities[0] < 5032.0);
    }

    // a table that reports accuracies outside [0,1] is a protocol violation
    const std::string bad = (dir / "bad.csv").string();
    {
        std::ofstream out(bad);
        out << "genome,accuracy\n";
        space.enumerate([&](const Genome& g) { out << encode_text(g) << ",1.5\n"; });
    }
    cfg.evaluator.table_path = bad;
    CHECK_THROWS_AS(run_search(cfg), MalformedResponse);
}

TEST_CASE("scalar mode tracks the running best") {
    RunConfig cfg = small_config();
    cfg.iterations = 4;
    cfg.scalar.target = 1.2e8;
    const auto res = run_scalarized(cfg);

    REQUIRE(res.trajectory.size() == res.archive.size());
    for (std::size_t i = 1; i < res.trajectory.size(); ++i)
        CHECK(res.trajectory[i] >= res.trajectory[i - 1]);

    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < res.archive.size(); ++i) {
        const auto& e = res.archive.at(i);
        const double j = scalarize(e.accuracy, e.complexities[0], cfg.scalar.target, cfg.scalar.exponent);
        if (j > best) {
            best = j;
            best_idx = i;
        }
    }
    CHECK(res.best_value == doctest::Approx(best).epsilon(1e-12));
    CHECK(res.best_index == best_idx);
    CHECK(res.trajectory.back() == doctest::Approx(best).epsilon(1e-12));
    for (std::size_t i = 1; i < res.metrics.size(); ++i) CHECK(std::isfinite(res.metrics[i].best_scalar));
    CHECK(res.metrics.back().best_scalar == res.trajectory.back());

    check_equal_runs(res, run_scalarized(cfg));
}

TEST_CASE("config json round trip is strict and placement-free") {
    RunConfig cfg = small_config();
    cfg.evaluator.synthetic.variant = SyntheticVariant::Rugged;
    cfg.evaluator.synthetic.sigma = 0.01;
    cfg.objectives = {"accuracy", "madds", "latency_cpu"};
    cfg.transfer_from = "runs/donor";

    const auto j = run_config_to_json(cfg);
    const RunConfig back = run_config_from_json(j);
    CHECK(run_config_to_json(back) == j);
    CHECK(config_hash_hex(back) == config_hash_hex(cfg));

    // artifact placement and mined distributions never change identity
    RunConfig moved = cfg;
    moved.checkpoint_path = "/somewhere/else.json";
    RandomEngine rng(1);
    moved.init_distribution = mine_frequencies({cfg.space.sample(rng)});
    CHECK(config_hash_hex(moved) == config_hash_hex(cfg));
    RunConfig reseeded = cfg;
    reseeded.seed += 1;
    CHECK(config_hash_hex(reseeded) != config_hash_hex(cfg));

    auto withTypo = j;
    withTypo["n_inits"] = 5;
    CHECK_THROWS_AS(run_config_from_json(withTypo), InvalidConfig);
    auto badNested = j;
    badNested["evaluator"]["flavour"] = "mild";
    CHECK_THROWS_AS(run_config_from_json(badNested), InvalidConfig);
    auto badType = j;
    badType["n_init"] = "twenty";
    CHECK_THROWS_AS(run_config_from_json(badType), InvalidConfig);

    const fs::path dir = fresh_dir("cfg");
    save_run_config(cfg, (dir / "c.json").string());
    const RunConfig loaded = load_run_config((dir / "c.json").string());
    CHECK(run_config_to_json(loaded) == j);
    CHECK_THROWS_AS(load_run_config((dir / "missing.json").string()), InvalidConfig);
}

TEST_CASE("artifacts are complete and byte-stable") {
    const fs::path dir = fresh_dir("artifacts");
    RunConfig cfg = small_config();
    const auto res = run_search(cfg);

    const fs::path out = dir / "run";
    prepare_out_dir(out.string(), false);
    write_run_artifacts(out.string(), cfg, res, false);
    for (const char* name : {"config.json", "archive.csv", "front0.csv", "metrics.csv", "front.svg"})
        CHECK(fs::exists(out / name));

    // rewriting the same run changes nothing, byte for byte
    const std::string before = slurp(out / "archive.csv") + slurp(out / "front0.csv") +
                               slurp(out / "metrics.csv") + slurp(out / "config.json");
    write_run_artifacts(out.string(), cfg, res, false);
    const std::string after = slurp(out / "archive.csv") + slurp(out / "front0.csv") +
                              slurp(out / "metrics.csv") + slurp(out / "config.json");
    CHECK(before == after);

    const std::string stamp = "# config_hash=" + config_hash_hex(cfg);
    CHECK(slurp(out / "archive.csv").substr(0, stamp.size()) == stamp);

    // occupied directories need force
    CHECK_THROWS_AS(prepare_out_dir(out.string(), false), InvalidConfig);
    prepare_out_dir(out.string(), true);
    CHECK_THROWS_AS(prepare_out_dir((dir / "run" / "archive.csv").string(), true), InvalidConfig);

    // scalar artifacts
    RunConfig scfg = small_config();
    scfg.scalar.target = 1.2e8;
    const auto sres = run_scalarized(scfg);
    const fs::path sout = dir / "scalar";
    prepare_out_dir(sout.string(), false);
    write_run_artifacts(sout.string(), scfg, sres, true);
    CHECK(fs::exists(sout / "trajectory.csv"));
    CHECK(fs::exists(sout / "best.json"));
    const auto best = nlohmann::json::parse(slurp(sout / "best.json"));
    CHECK(best.at("value").get<double>() == doctest::Approx(sres.best_value));
    CHECK(best.at("genome").get<std::string>() ==
          encode_text(sres.archive.at(sres.best_index).genome));
}

TEST_CASE("run digests reconstruct the front from disk") {
    const fs::path dir = fresh_dir("analyze");
    RunConfig cfg = small_config();
    cfg.objectives = {"accuracy", "madds", "latency_cpu"};
    const auto res = run_search(cfg);
    prepare_out_dir((dir / "run").string(), false);
    write_run_artifacts((dir / "run").string(), cfg, res, false);

    const auto rep = analyze_run((dir / "run").string());
    CHECK(rep.objective_names == std::vector<std::string>{"accuracy", "madds", "latency_cpu"});
    REQUIRE(rep.genomes.size() == res.archive.size());
    for (std::size_t i = 0; i < rep.genomes.size(); ++i) {
        CHECK(rep.genomes[i] == res.archive.at(i).genome);
        CHECK(rep.objective_values[i][0] == res.archive.at(i).accuracy);
        CHECK(rep.objective_values[i][1] == res.archive.at(i).complexities[0]);
    }
    CHECK(rep.front_rows == res.front0);
    REQUIRE(rep.correlations.size() == 3);
    CHECK(rep.correlations[0][0] == 1.0);
    CHECK(rep.correlations[1][2] == doctest::Approx(rep.correlations[2][1]));
    // madds and cpu latency rank almost identically on this backbone
    CHECK(rep.correlations[1][2] > 0.9);
    CHECK(rep.front_frequencies.raw.size() == std::size_t(kGeneCount));

    prepare_out_dir((dir / "digest").string(), false);
    write_analyze_artifacts((dir / "digest").string(), rep, "# config_hash=test");
    for (const char* name : {"front_table.csv", "gene_frequencies.csv", "frequency_heatmap.svg",
                             "objective_correlations.csv"})
        CHECK(fs::exists(dir / "digest" / name));

    CHECK_THROWS_AS(analyze_run((dir / "empty").string()), MissingRunArtifacts);
}

TEST_CASE("rank-fidelity study sweeps sizes with the adaptive row last") {
    const auto rows =
        surrogate_study(reduced_space(), SyntheticConfig{}, {30, 60}, 2, 200, 40, 99);
    REQUIRE(rows.size() == 10);
    const char* order[] = {"mlp", "cart", "rbf", "gp", "adaptive"};
    for (int s = 0; s < 2; ++s) {
        double worst = 2.0;
        for (int m = 0; m < 5; ++m) {
            const auto& row = rows[s * 5 + m];
            CHECK(row.model == order[m]);
            CHECK(row.train_size == (s == 0 ? 30 : 60));
            CHECK(std::isfinite(row.mean_tau));
            if (m < 4) worst = std::min(worst, row.mean_tau);
        }
        CHECK(rows[s * 5 + 4].mean_tau >= worst - 1e-9);
    }
    CHECK_THROWS_AS(surrogate_study(reduced_space(), SyntheticConfig{}, {10}, 2, 200, 40, 99),
                    InvalidConfig);
    CHECK_THROWS_AS(surrogate_study(reduced_space(), SyntheticConfig{}, {300}, 2, 200, 40, 99),
                    InvalidConfig);
}

TEST_CASE("efficiency study produces paired non-decreasing curves") {
    RunConfig base = small_config();
    const auto study = efficiency_study(base, 2);
    CHECK(study.exhaustive_hv > 0.0);
    std::set<std::pair<std::string, std::uint64_t>> arms;
    for (const auto& pt : study.curves) arms.insert({pt.method, pt.seed});
    CHECK(arms.size() == 4);  // surrogate and random, two seeds each
    for (const auto& [method, seed] : arms) {
        double prev_hv = -1.0;
        int prev_x = -1;
        for (const auto& pt : study.curves) {
            if (pt.method != method || pt.seed != seed) continue;
            CHECK(pt.evaluations > prev_x);
            CHECK(pt.hypervolume >= prev_hv);
            prev_x = pt.evaluations;
            prev_hv = pt.hypervolume;
            CHECK(pt.hypervolume <= study.exhaustive_hv + 1e-9);
        }
        CHECK(prev_x > 0);
    }
    for (const auto& row : study.summary) {
        double acc = 0.0;
        int n = 0;
        for (const auto& pt : study.curves)
            if (pt.method == row.method && pt.evaluations == row.evaluations) {
                acc += pt.hypervolume;
                ++n;
            }
        REQUIRE(n == 2);
        CHECK(row.mean_hv == doctest::Approx(acc / 2).epsilon(1e-12));
    }
}

TEST_CASE("command line surface") {
    const char* cli = std::getenv("SANAS_CLI_PATH");
    if (cli == nullptr) cli = SANAS_CLI_PATH;
    const fs::path dir = fresh_dir("cli");
    const std::string config = (dir / "config.json").string();
    RunConfig cfg = small_config();
    cfg.iterations = 1;
    save_run_config(cfg, config);

    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(cli) + " " + args + " >" + (dir / "out.log").string() +
                                " 2>" + (dir / "err.log").string();
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    const std::string out = (dir / "run").string();
    CHECK(run("search --config " + config + " --out " + out) == 0);
    for (const char* name : {"config.json", "archive.csv", "front0.csv", "metrics.csv",
                             "checkpoint.json"})
        CHECK(fs::exists(fs::path(out) / name));

    CHECK(run("search --config " + config + " --out " + out) == 2);  // occupied
    CHECK(run("search --config " + config + " --out " + out + " --force") == 0);
    CHECK(run("search --out " + out) == 2);        // --config is required
    CHECK(run("search --config " + config) == 2);  // --out is required
    CHECK(run("frobnicate") == 2);
    CHECK(run("search --config " + (dir / "nope.json").string() + " --out " + out + " --force") == 2);

    CHECK(run("analyze " + out + " --out " + (dir / "digest").string()) == 0);
    CHECK(fs::exists(dir / "digest" / "front_table.csv"));

    CHECK(run("resume " + out) == 0);  // finished run: rewrite artifacts, succeed
    std::ofstream(fs::path(out) / "checkpoint.json") << "{broken";
    CHECK(run("resume " + out) == 4);  // damaged state
    fs::remove(fs::path(out) / "checkpoint.json");
    CHECK(run("resume " + out) == 2);  // nothing to resume
}
