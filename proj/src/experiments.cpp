#include "sanas/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <unordered_set>

#include "sanas/csv.hpp"
#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

SearchSpace reduced_space() {
    const BlockChoices searched{{2, 3}, {1, 2}, {1, 2}};
    const BlockChoices pinned{{2}, {1}, {1}};
    return SearchSpace({0, 1}, {searched, searched, pinned, pinned, pinned});
}

namespace {

double nan_mean(const std::vector<double>& v) {
    double s = 0;
    int n = 0;
    for (double x : v)
        if (std::isfinite(x)) {
            s += x;
            ++n;
        }
    return n ? s / n : std::numeric_limits<double>::quiet_NaN();
}

double nan_sd(const std::vector<double>& v) {
    const double m = nan_mean(v);
    if (!std::isfinite(m)) return std::numeric_limits<double>::quiet_NaN();
    double s = 0;
    int n = 0;
    for (double x : v)
        if (std::isfinite(x)) {
            s += (x - m) * (x - m);
            ++n;
        }
    return n > 1 ? std::sqrt(s / (n - 1)) : 0.0;
}

std::vector<Genome> sample_unique(const SearchSpace& space, int n, RandomEngine& rng) {
    std::vector<Genome> out;
    std::unordered_set<std::uint64_t> seen;
    for (int attempts = 0; static_cast<int>(out.size()) < n && attempts < 200 * n; ++attempts) {
        Genome g = space.sample(rng);
        if (seen.insert(genome_hash(g)).second) out.push_back(g);
    }
    return out;
}

// Rank correlations with degenerate rankings scored as zero agreement.
double safe_tau(const std::vector<double>& a, const std::vector<double>& b) {
    try {
        return kendall_tau(a, b);
    } catch (const AllTied&) {
        return 0.0;
    }
}

double safe_spearman(const std::vector<double>& a, const std::vector<double>& b) {
    try {
        return spearman(a, b);
    } catch (const AllTied&) {
        return 0.0;
    }
}

} // namespace

std::vector<SurrogateStudyRow> surrogate_study(const SearchSpace& space, const SyntheticConfig& synth,
                                               const std::vector<int>& train_sizes, int trials,
                                               int pool_size, int holdout_size, std::uint64_t seed) {
    if (train_sizes.empty()) throw InvalidConfig("study needs at least one training size");
    if (trials < 1) throw InvalidConfig("study needs at least one trial");
    if (holdout_size < 2) throw InvalidConfig("holdout must hold at least two points");
    int max_size = 0;
    for (int s : train_sizes) {
        if (s < 20) throw InvalidConfig("training sizes below 20 cannot drive model selection");
        max_size = std::max(max_size, s);
    }
    if (max_size + holdout_size > pool_size)
        throw InvalidConfig("pool too small for the largest training size plus holdout");

    RandomEngine pool_rng(derive_seed(seed, "study-pool"));
    const std::vector<Genome> pool = sample_unique(space, pool_size, pool_rng);
    if (static_cast<int>(pool.size()) < max_size + holdout_size)
        throw InvalidConfig("space too small to fill the study pool");
    std::vector<double> truth(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) truth[i] = synthetic_accuracy(pool[i], synth);

    const char* labels[] = {"mlp", "cart", "rbf", "gp", "adaptive"};
    const ModelId ids[] = {ModelId::MLP, ModelId::CART, ModelId::RBF, ModelId::GP};

    std::vector<SurrogateStudyRow> rows;
    for (int size : train_sizes) {
        std::vector<double> taus[5], rhos[5];
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t trial_seed =
                derive_seed(seed, "study-trial", static_cast<std::uint64_t>(size) * 10007u + trial);
            std::vector<std::size_t> perm(pool.size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            RandomEngine trial_rng(trial_seed);
            trial_rng.shuffle(perm);

            TrainingSet ts;
            for (int i = 0; i < size; ++i) {
                ts.genomes.push_back(pool[perm[i]]);
                ts.targets.push_back(truth[perm[i]]);
            }
            std::vector<Genome> test_g;
            std::vector<double> test_y;
            for (int i = pool_size - holdout_size; i < pool_size; ++i) {
                test_g.push_back(pool[perm[i]]);
                test_y.push_back(truth[perm[i]]);
            }

            for (int m = 0; m < 4; ++m) {
                try {
                    const FittedPredictor f = fit_model(ids[m], ts, derive_seed(trial_seed, labels[m]));
                    const auto preds = f.predict(test_g);
                    taus[m].push_back(safe_tau(preds, test_y));
                    rhos[m].push_back(safe_spearman(preds, test_y));
                } catch (const Error&) {
                    taus[m].push_back(std::numeric_limits<double>::quiet_NaN());
                    rhos[m].push_back(std::numeric_limits<double>::quiet_NaN());
                }
            }
            try {
                const SwitchResult sw = adaptive_switch(ts, trial_seed);
                const auto preds = sw.model.predict(test_g);
                taus[4].push_back(safe_tau(preds, test_y));
                rhos[4].push_back(safe_spearman(preds, test_y));
            } catch (const Error&) {
                taus[4].push_back(std::numeric_limits<double>::quiet_NaN());
                rhos[4].push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        for (int m = 0; m < 5; ++m)
            rows.push_back(SurrogateStudyRow{labels[m], size, nan_mean(taus[m]), nan_sd(taus[m]),
                                             nan_mean(rhos[m]), nan_sd(rhos[m])});
    }
    return rows;
}

namespace {

// True min-objective vectors for a set of genomes, via the configured
// evaluator (complexities analytic unless the evaluator overrides them).
std::vector<ObjectiveVector> true_objectives(Evaluator& ev, const RunConfig& cfg,
                                             const std::vector<Genome>& gs, std::uint64_t& next_id) {
    std::vector<EvalRequest> reqs;
    reqs.reserve(gs.size());
    for (const Genome& g : gs) {
        EvalRequest r;
        r.id = next_id++;
        r.genome_text = encode_text(g);
        r.resolution_px = g.resolution_px();
        r.objectives = cfg.objectives;
        reqs.push_back(std::move(r));
    }
    auto results = ev.evaluate(reqs);
    std::map<std::uint64_t, const EvalResult*> by_id;
    for (const auto& r : results) by_id[r.id] = &r;
    std::vector<ObjectiveVector> out;
    out.reserve(gs.size());
    const auto names = cfg.complexity_names();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        auto it = by_id.find(reqs[i].id);
        if (it == by_id.end())
            throw MalformedResponse("evaluator skipped request id " + std::to_string(reqs[i].id));
        ObjectiveVector v{-it->second->accuracy};
        const ComplexityVector cv = complexity(gs[i], cfg.backbone);
        for (const auto& n : names) {
            auto ex = it->second->extras.find(n);
            v.push_back(ex != it->second->extras.end() ? ex->second : complexity_component(cv, n));
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

EfficiencyStudy efficiency_study(const RunConfig& base, int seeds) {
    base.validate(false);
    if (seeds < 1) throw InvalidConfig("efficiency study needs at least one seed");

    std::vector<Genome> everything;
    base.space.enumerate([&](const Genome& g) { everything.push_back(g); });
    auto ev = make_evaluator(base.evaluator);
    std::uint64_t next_id = 1;
    const auto all_objs = true_objectives(*ev, base, everything, next_id);

    EfficiencyStudy study;
    const std::size_t m = base.objectives.size();
    std::vector<double> lower(m, std::numeric_limits<double>::infinity());
    std::vector<double> upper(m, -std::numeric_limits<double>::infinity());
    for (const auto& p : all_objs)
        for (std::size_t j = 0; j < m; ++j) {
            lower[j] = std::min(lower[j], p[j]);
            upper[j] = std::max(upper[j], p[j]);
        }
    study.hv = HvConfig::from_bounds(lower, upper, base.hv_margin);
    study.exhaustive_hv = hypervolume(all_objs, study.hv, base.seed);

    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t run_seed = derive_seed(base.seed, "efficiency-seed", s);
        RunConfig cfg = base;
        cfg.seed = run_seed;
        cfg.checkpoint_path.clear();
        const RunResult run = run_search(cfg);

        // Checkpoints where either curve is sampled: the run's own
        // evaluation counts, deduplicated (stalled iterations repeat one).
        std::vector<int> checkpoints;
        for (const auto& row : run.metrics)
            if (checkpoints.empty() || row.evaluations > checkpoints.back())
                checkpoints.push_back(row.evaluations);

        std::vector<ObjectiveVector> prefix;
        for (const auto& e : run.archive.entries()) prefix.push_back(e.min_objectives());
        for (int c : checkpoints) {
            const std::vector<ObjectiveVector> head(prefix.begin(), prefix.begin() + c);
            study.curves.push_back(
                HvCurvePoint{"surrogate", run_seed, c, hypervolume(head, study.hv, base.seed)});
        }

        RandomEngine rng(derive_seed(run_seed, "random-baseline"));
        const int budget = checkpoints.back();
        std::vector<Genome> random_g = sample_unique(base.space, budget, rng);
        const auto random_objs = true_objectives(*ev, base, random_g, next_id);
        for (int c : checkpoints) {
            const int take = std::min<int>(c, static_cast<int>(random_objs.size()));
            const std::vector<ObjectiveVector> head(random_objs.begin(), random_objs.begin() + take);
            study.curves.push_back(
                HvCurvePoint{"random", run_seed, c, hypervolume(head, study.hv, base.seed)});
        }
    }

    std::map<std::pair<std::string, int>, std::vector<double>> grouped;
    for (const auto& p : study.curves) grouped[{p.method, p.evaluations}].push_back(p.hypervolume);
    for (const auto& [key, values] : grouped)
        study.summary.push_back(HvSummaryRow{key.first, key.second, nan_mean(values), nan_sd(values)});
    return study;
}

AnalyzeReport analyze_run(const std::string& run_dir) {
    const std::filesystem::path path = std::filesystem::path(run_dir) / "archive.csv";
    if (!std::filesystem::exists(path))
        throw MissingRunArtifacts("archive.csv not found in " + run_dir);
    const CsvTable table = read_csv(path.string());

    // Layout: genome, accuracy, <complexity...>, iteration, evaluator.
    const std::size_t g_col = table.column("genome");
    const std::size_t a_col = table.column("accuracy");
    const std::size_t it_col = table.column("iteration");
    if (g_col != 0 || a_col != 1 || it_col + 2 != table.header.size() || it_col < 2)
        throw MissingRunArtifacts("archive.csv does not look like a run archive");

    AnalyzeReport rep;
    rep.objective_names.push_back("accuracy");
    for (std::size_t c = 2; c < it_col; ++c) rep.objective_names.push_back(table.header[c]);

    std::vector<ObjectiveVector> min_objs;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        try {
            rep.genomes.push_back(decode_text(row[g_col]));
            std::vector<double> vals{std::stod(row[a_col])};
            for (std::size_t c = 2; c < it_col; ++c) vals.push_back(std::stod(row[c]));
            ObjectiveVector mo{-vals[0]};
            for (std::size_t j = 1; j < vals.size(); ++j) mo.push_back(vals[j]);
            min_objs.push_back(std::move(mo));
            rep.objective_values.push_back(std::move(vals));
        } catch (const std::exception&) {
            throw ParseError(r + 1, "unreadable archive row");
        }
    }
    if (rep.genomes.empty()) throw MissingRunArtifacts("archive.csv holds no designs");

    rep.front_rows = nondominated_sort(min_objs).front();
    std::vector<Genome> front_genomes;
    for (std::size_t i : rep.front_rows) front_genomes.push_back(rep.genomes[i]);
    rep.front_frequencies = mine_frequencies(front_genomes);

    const std::size_t k = rep.objective_names.size();
    rep.correlations.assign(k, std::vector<double>(k, 1.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<double> a, b;
            for (const auto& vals : rep.objective_values) {
                a.push_back(vals[i]);
                b.push_back(vals[j]);
            }
            double rho = std::numeric_limits<double>::quiet_NaN();
            try {
                rho = spearman(a, b);
            } catch (const AllTied&) {
            }
            rep.correlations[i][j] = rep.correlations[j][i] = rho;
        }
    return rep;
}

} // namespace sanas
