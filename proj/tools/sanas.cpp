#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "sanas/artifacts.hpp"
#include "sanas/config.hpp"
#include "sanas/driver.hpp"
#include "sanas/errors.hpp"
#include "sanas/eval_stub.hpp"
#include "sanas/experiments.hpp"

namespace fs = std::filesystem;
using namespace sanas;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int budget = -1;
    std::string evaluator_kind;
    std::string variant;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
    auto* c = cmd->add_option("--config", f.config_path, "run configuration JSON");
    if (config_required) c->required();
    cmd->add_option("--out", f.out_dir, "output directory")->required();
    cmd->add_option("--seed", f.seed, "override the config seed");
    cmd->add_option("--budget", f.budget, "override the iteration count");
    cmd->add_option("--evaluator", f.evaluator_kind, "override the evaluator kind");
    cmd->add_option("--variant", f.variant, "override the synthetic landscape variant");
    cmd->add_flag("--force", f.force, "write into a non-empty output directory");
}

RunConfig effective_config(const CLI::App* cmd, const CommonFlags& f) {
    RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_run_config(f.config_path);
    if (cmd->count("--seed")) cfg.seed = f.seed;
    if (cmd->count("--budget")) cfg.iterations = f.budget;
    if (cmd->count("--evaluator")) cfg.evaluator.kind = f.evaluator_kind;
    if (cmd->count("--variant"))
        cfg.evaluator.synthetic.variant = synthetic_variant_from_string(f.variant);
    return cfg;
}

int do_search(const CLI::App* cmd, const CommonFlags& f, bool scalar_mode,
              const std::string& transfer_from) {
    RunConfig cfg = effective_config(cmd, f);
    if (!transfer_from.empty()) {
        const AnalyzeReport donor = analyze_run(transfer_from);
        cfg.init_distribution = donor.front_frequencies;
        cfg.transfer_from = transfer_from;
    }
    cfg.validate(scalar_mode);
    prepare_out_dir(f.out_dir, f.force);
    cfg.checkpoint_path = (fs::path(f.out_dir) / "checkpoint.json").string();
    const RunResult res = scalar_mode ? run_scalarized(cfg) : run_search(cfg);
    write_run_artifacts(f.out_dir, cfg, res, scalar_mode);
    std::cout << "archive: " << res.archive.size() << " designs, front: " << res.front0.size()
              << ", artifacts in " << f.out_dir << '\n';
    return 0;
}

int do_resume(const std::string& run_dir) {
    const fs::path base(run_dir);
    const std::string config_path = (base / "config.json").string();
    const std::string checkpoint_path = (base / "checkpoint.json").string();
    if (!fs::exists(config_path) || !fs::exists(checkpoint_path))
        throw MissingRunArtifacts("resume needs config.json and checkpoint.json in " + run_dir);
    RunConfig cfg = load_run_config(config_path);
    cfg.checkpoint_path = checkpoint_path;
    const bool scalar_mode =
        read_checkpoint_file(checkpoint_path).at("mode").get<std::string>() == "scalar";
    cfg.validate(scalar_mode);
    const RunResult res = scalar_mode ? resume_scalarized(cfg, checkpoint_path)
                                      : resume_search(cfg, checkpoint_path);
    write_run_artifacts(run_dir, cfg, res, scalar_mode);
    std::cout << "resumed through iteration " << res.metrics.back().iteration << ", archive "
              << res.archive.size() << " designs\n";
    return 0;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const CorruptCheckpoint& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ChildCrashed& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const EvalTimeout& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const MalformedResponse& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const MissingEntry& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const MissingRunArtifacts& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SpaceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"surrogate-assisted multi-objective architecture search"};
    app.require_subcommand(1);

    CommonFlags search_f, scalar_f, transfer_f, sstudy_f, estudy_f;
    std::string transfer_from, resume_dir, analyze_dir, analyze_out;
    bool analyze_force = false;
    int study_trials = 10, study_pool = 2000, study_holdout = 500, study_seeds = 5;

    auto* search = app.add_subcommand("search", "multi-objective surrogate-assisted run");
    add_common(search, search_f, true);

    auto* scalar = app.add_subcommand("search-scalar", "single-objective (scalarized) run");
    add_common(scalar, scalar_f, true);

    auto* transfer = app.add_subcommand("transfer", "search seeded from a previous run's front");
    add_common(transfer, transfer_f, true);
    transfer->add_option("--from", transfer_from, "finished run directory to mine")->required();

    auto* resume = app.add_subcommand("resume", "continue an interrupted run in place");
    resume->add_option("run_dir", resume_dir, "run directory with checkpoint.json")->required();

    auto* analyze = app.add_subcommand("analyze", "digest a finished run directory");
    analyze->add_option("run_dir", analyze_dir, "run directory with archive.csv")->required();
    analyze->add_option("--out", analyze_out, "output directory (default <run_dir>/analysis)");
    analyze->add_flag("--force", analyze_force, "write into a non-empty output directory");

    auto* sstudy = app.add_subcommand("surrogate-study", "rank-fidelity sweep over training sizes");
    add_common(sstudy, sstudy_f, false);
    sstudy->add_option("--trials", study_trials, "trials per training size");
    sstudy->add_option("--pool", study_pool, "sample pool size");
    sstudy->add_option("--holdout", study_holdout, "held-out scoring set size");

    auto* estudy = app.add_subcommand("efficiency-study", "surrogate vs random at equal budgets");
    add_common(estudy, estudy_f, true);
    estudy->add_option("--seeds", study_seeds, "paired repetitions");

    StubOptions stub_opt;
    std::string stub_variant = "smooth";
    auto* stub = app.add_subcommand("eval-stub", "stdin/stdout synthetic evaluation child");
    stub->add_option("--variant", stub_variant, "synthetic landscape variant");
    stub->add_option("--sigma", stub_opt.synthetic.sigma, "additive noise level");
    stub->add_option("--noise-seed", stub_opt.synthetic.noise_seed, "noise stream seed");
    stub->add_option("--shuffle-window", stub_opt.shuffle_window,
                     "buffer this many responses and emit them reversed");
    stub->add_option("--drop-once", stub_opt.drop_once,
                     "swallow the n-th request (0-based) the first time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    return run_guarded([&]() -> int {
        if (search->parsed()) return do_search(search, search_f, false, "");
        if (scalar->parsed()) return do_search(scalar, scalar_f, true, "");
        if (transfer->parsed()) return do_search(transfer, transfer_f, false, transfer_from);
        if (resume->parsed()) return do_resume(resume_dir);

        if (analyze->parsed()) {
            const std::string out =
                analyze_out.empty() ? (fs::path(analyze_dir) / "analysis").string() : analyze_out;
            const AnalyzeReport rep = analyze_run(analyze_dir);
            prepare_out_dir(out, analyze_force);
            write_analyze_artifacts(out, rep, "source=" + analyze_dir);
            std::cout << "front " << rep.front_rows.size() << " of " << rep.genomes.size()
                      << " designs, analysis in " << out << '\n';
            return 0;
        }

        if (sstudy->parsed()) {
            SearchSpace space = reduced_space();
            SyntheticConfig synth;
            std::uint64_t seed = 0;
            if (!sstudy_f.config_path.empty()) {
                const RunConfig cfg = load_run_config(sstudy_f.config_path);
                space = cfg.space;
                synth = cfg.evaluator.synthetic;
                seed = cfg.seed;
            }
            if (sstudy->count("--seed")) seed = sstudy_f.seed;
            if (sstudy->count("--variant"))
                synth.variant = synthetic_variant_from_string(sstudy_f.variant);
            prepare_out_dir(sstudy_f.out_dir, sstudy_f.force);
            const auto rows = surrogate_study(space, synth, {100, 200, 300, 400, 500}, study_trials,
                                              study_pool, study_holdout, seed);
            write_surrogate_study_artifacts(sstudy_f.out_dir, rows,
                                            "variant=" + std::string(to_string(synth.variant)));
            std::cout << rows.size() << " rows in " << sstudy_f.out_dir << "/correlation_table.csv\n";
            return 0;
        }

        if (estudy->parsed()) {
            RunConfig cfg = effective_config(estudy, estudy_f);
            cfg.validate(false);
            prepare_out_dir(estudy_f.out_dir, estudy_f.force);
            const EfficiencyStudy study = efficiency_study(cfg, study_seeds);
            write_efficiency_study_artifacts(estudy_f.out_dir, study,
                                             "config_hash=" + config_hash_hex(cfg));
            std::cout << study.curves.size() << " curve points in " << estudy_f.out_dir << '\n';
            return 0;
        }

        if (stub->parsed()) {
            stub_opt.synthetic.variant = synthetic_variant_from_string(stub_variant);
            return run_eval_stub(stub_opt, std::cin, std::cout);
        }
        return 2;  // unreachable: require_subcommand(1)
    });
}
