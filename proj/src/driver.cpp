#include "sanas/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <unordered_set>

#include "sanas/config.hpp"
#include "sanas/errors.hpp"
#include "sanas/external_evaluator.hpp"
#include "sanas/rng.hpp"

namespace sanas {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string>& known_complexity_names() {
    static const std::set<std::string> names{"madds", "params", "latency_cpu", "latency_gpu"};
    return names;
}

// JSON has no NaN; absent-by-design metrics serialize as null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double num(const json& v) { return v.is_null() ? kNaN : v.get<double>(); }

} // namespace

std::vector<std::string> RunConfig::complexity_names() const {
    return {objectives.begin() + (objectives.empty() ? 0 : 1), objectives.end()};
}

void RunConfig::validate(bool scalarized) const {
    if (n_init < 20) throw InvalidConfig("initial design needs at least 20 points");
    if (iterations < 0) throw InvalidConfig("iteration count must be non-negative");
    if (batch < 1) throw InvalidConfig("batch size must be positive");
    if (objectives.size() < 2 || objectives.front() != "accuracy")
        throw InvalidConfig("objectives must be [\"accuracy\", <complexity>...]");
    std::set<std::string> seen;
    for (std::size_t i = 1; i < objectives.size(); ++i) {
        if (!known_complexity_names().count(objectives[i]))
            throw InvalidConfig("unknown complexity objective: " + objectives[i]);
        if (!seen.insert(objectives[i]).second)
            throw InvalidConfig("duplicate objective: " + objectives[i]);
    }
    if (!(hv_margin > 1.0)) throw InvalidConfig("hv margin must exceed 1");
    backbone.validate();
    if (evaluator.kind != "synthetic" && evaluator.kind != "tabular" && evaluator.kind != "external")
        throw InvalidConfig("unknown evaluator kind: " + evaluator.kind);
    if (evaluator.kind == "tabular" && evaluator.table_path.empty())
        throw InvalidConfig("tabular evaluator needs a table path");
    if (evaluator.kind == "external" && evaluator.command.empty())
        throw InvalidConfig("external evaluator needs a command");
    if (!(evaluator.timeout_s > 0)) throw InvalidConfig("evaluator timeout must be positive");
    if (evaluator.max_retries < 0) throw InvalidConfig("evaluator retry count must be non-negative");
    if (scalarized) {
        if (!(scalar.target > 0)) throw InvalidConfig("scalar target must be positive");
        if (!std::isfinite(scalar.exponent)) throw InvalidConfig("scalar exponent must be finite");
        const auto names = complexity_names();
        if (std::find(names.begin(), names.end(), scalar.objective) == names.end())
            throw InvalidConfig("scalar objective must be one of the complexity objectives");
    }
}

std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig& cfg) {
    if (cfg.kind == "synthetic") return std::make_unique<SyntheticEvaluator>(cfg.synthetic);
    if (cfg.kind == "tabular")
        return std::make_unique<TabularEvaluator>(TabularEvaluator::load(cfg.table_path));
    if (cfg.kind == "external")
        return std::make_unique<ExternalEvaluator>(
            ExternalEvaluator::Options{cfg.command, cfg.timeout_s, cfg.max_retries});
    throw InvalidConfig("unknown evaluator kind: " + cfg.kind);
}

// -- batch selection ----------------------------------------------------------

std::vector<std::size_t> subset_select(const std::vector<double>& predicted_accuracy,
                                       const std::vector<std::vector<double>>& candidate_complexities,
                                       const std::vector<std::vector<double>>& front_complexities,
                                       const std::vector<double>& normalization_ranges,
                                       int batch) {
    if (predicted_accuracy.empty()) throw EmptyAfterDedup();
    if (predicted_accuracy.size() != candidate_complexities.size())
        throw ArityMismatch(predicted_accuracy.size(), candidate_complexities.size());
    if (batch < 1) throw InvalidConfig("batch size must be positive");
    const std::size_t dims = normalization_ranges.size();
    for (const auto& v : candidate_complexities)
        if (v.size() != dims) throw ArityMismatch(v.size(), dims);
    for (const auto& v : front_complexities)
        if (v.size() != dims) throw ArityMismatch(v.size(), dims);

    auto distance = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
            const double r = normalization_ranges[j] > 0 ? normalization_ranges[j] : 1.0;
            const double d = (a[j] - b[j]) / r;
            s += d * d;
        }
        return std::sqrt(s);
    };

    std::size_t first = 0;
    for (std::size_t i = 1; i < predicted_accuracy.size(); ++i)
        if (predicted_accuracy[i] > predicted_accuracy[first]) first = i;

    std::vector<std::size_t> chosen{first};
    std::vector<char> used(predicted_accuracy.size(), 0);
    used[first] = 1;
    std::vector<const std::vector<double>*> anchors{&candidate_complexities[first]};
    for (const auto& f : front_complexities) anchors.push_back(&f);

    while (chosen.size() < static_cast<std::size_t>(batch)) {
        std::size_t best = predicted_accuracy.size();
        double best_gap = -1.0;
        for (std::size_t i = 0; i < predicted_accuracy.size(); ++i) {
            if (used[i]) continue;
            double gap = std::numeric_limits<double>::infinity();
            for (const auto* a : anchors) gap = std::min(gap, distance(candidate_complexities[i], *a));
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best == predicted_accuracy.size()) break;  // pool exhausted
        chosen.push_back(best);
        used[best] = 1;
        anchors.push_back(&candidate_complexities[best]);
    }
    return chosen;
}

// -- checkpoint primitives ----------------------------------------------------

namespace {

std::string hash_hex(const std::string& text) {
    const std::uint64_t h = fnv1a64(text);
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[i] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

} // namespace

void write_checkpoint_file(const std::string& path, const json& payload) {
    json file{{"payload", payload}, {"hash", hash_hex(payload.dump())}};
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InvalidConfig("cannot write checkpoint: " + tmp);
        out << file.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

json read_checkpoint_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorruptCheckpoint("cannot open checkpoint: " + path);
    json file;
    try {
        in >> file;
    } catch (const json::exception&) {
        throw CorruptCheckpoint("checkpoint is not valid JSON");
    }
    if (!file.is_object() || !file.contains("payload") || !file.contains("hash") ||
        !file["hash"].is_string())
        throw CorruptCheckpoint("checkpoint missing payload or hash");
    if (hash_hex(file["payload"].dump()) != file["hash"].get<std::string>())
        throw CorruptCheckpoint("checkpoint hash mismatch: state file damaged");
    return file["payload"];
}

// -- the drive loop -----------------------------------------------------------

namespace {

struct DriverState {
    Archive archive;
    HvConfig hv;
    std::vector<MetricsRow> metrics;
    std::vector<double> trajectory;  // scalar mode only
    std::optional<FittedPredictor> model;
    std::uint64_t next_id = 1;
    int completed_iteration = -1;  // -1 = nothing done, 0 = initial design done
};

std::vector<EvalResult> evaluate_genomes(Evaluator& ev, const RunConfig& cfg,
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
    std::map<std::uint64_t, EvalResult> by_id;
    for (auto& r : results) by_id[r.id] = std::move(r);
    std::vector<EvalResult> ordered;
    ordered.reserve(reqs.size());
    for (const auto& req : reqs) {
        auto it = by_id.find(req.id);
        if (it == by_id.end())
            throw MalformedResponse("evaluator skipped request id " + std::to_string(req.id));
        ordered.push_back(std::move(it->second));
    }
    return ordered;
}

EvaluatedArch make_entry(const RunConfig& cfg, const Genome& g, const EvalResult& r, int iteration) {
    if (!std::isfinite(r.accuracy) || r.accuracy < 0.0 || r.accuracy > 1.0)
        throw MalformedResponse("accuracy outside [0,1] for genome " + encode_text(g));
    EvaluatedArch e;
    e.genome = g;
    e.accuracy = r.accuracy;
    const ComplexityVector cv = complexity(g, cfg.backbone);
    for (const std::string& name : cfg.complexity_names()) {
        auto it = r.extras.find(name);  // measured values override the analytic model
        e.complexities.push_back(it != r.extras.end() ? it->second : complexity_component(cv, name));
    }
    e.iteration = iteration;
    e.evaluator_id = r.evaluator_id;
    return e;
}

double archive_hv(const DriverState& st, const RunConfig& cfg) {
    return hypervolume(st.archive.min_objectives(), st.hv, cfg.seed);
}

std::size_t scalar_coordinate(const RunConfig& cfg) {
    const auto names = cfg.complexity_names();
    return static_cast<std::size_t>(
        std::find(names.begin(), names.end(), cfg.scalar.objective) - names.begin());
}

double entry_scalar(const RunConfig& cfg, const EvaluatedArch& e) {
    return scalarize(e.accuracy, e.complexities[scalar_coordinate(cfg)], cfg.scalar.target,
                     cfg.scalar.exponent);
}

void extend_trajectory(DriverState& st, const RunConfig& cfg, std::size_t from_entry) {
    for (std::size_t i = from_entry; i < st.archive.size(); ++i) {
        const double j = entry_scalar(cfg, st.archive.at(i));
        st.trajectory.push_back(st.trajectory.empty() ? j : std::max(st.trajectory.back(), j));
    }
}

void initialize(DriverState& st, Evaluator& ev, const RunConfig& cfg, bool scalar_mode) {
    std::vector<Genome> init;
    if (cfg.init_distribution) {
        init = transfer_init(*cfg.init_distribution, cfg.n_init, cfg.seed, &cfg.space);
    } else {
        RandomEngine rng(derive_seed(cfg.seed, "init-sampling"));
        std::unordered_set<std::uint64_t> seen;
        // Resample duplicates; tiny spaces may fill up before n_init distinct
        // genomes exist, in which case we proceed with what there is.
        for (int attempts = 0;
             static_cast<int>(init.size()) < cfg.n_init && attempts < 200 * cfg.n_init; ++attempts) {
            Genome g = cfg.space.sample(rng);
            if (seen.insert(genome_hash(g)).second) init.push_back(g);
        }
    }
    auto results = evaluate_genomes(ev, cfg, init, st.next_id);
    for (std::size_t i = 0; i < init.size(); ++i)
        st.archive.insert(make_entry(cfg, init[i], results[i], 0));
    if (scalar_mode) extend_trajectory(st, cfg, 0);

    // Freeze the hypervolume normalization box on the initial design.
    const auto pts = st.archive.min_objectives();
    const std::size_t m = cfg.objectives.size();
    std::vector<double> lower(m, std::numeric_limits<double>::infinity());
    std::vector<double> upper(m, -std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
        for (std::size_t j = 0; j < m; ++j) {
            lower[j] = std::min(lower[j], p[j]);
            upper[j] = std::max(upper[j], p[j]);
        }
    st.hv = HvConfig::from_bounds(lower, upper, cfg.hv_margin);

    MetricsRow row;
    row.iteration = 0;
    row.evaluations = static_cast<int>(st.archive.size());
    row.hypervolume = archive_hv(st, cfg);
    if (scalar_mode) row.best_scalar = st.trajectory.back();
    st.metrics.push_back(row);
}

TrainingSet archive_training_set(const Archive& a) {
    TrainingSet ts;
    ts.genomes.reserve(a.size());
    ts.targets.reserve(a.size());
    for (const auto& e : a.entries()) {
        ts.genomes.push_back(e.genome);
        ts.targets.push_back(e.accuracy);
    }
    return ts;
}

double winner_tau(const SwitchResult& sw) {
    for (const CvScore& s : sw.scores)
        if (s.id == sw.model.id) return s.mean_tau;
    return kNaN;
}

// Rank-0 survivors of the inner run, deduplicated and with everything the
// archive already holds removed; order follows the final population.
std::vector<Genome> screen_candidates(const std::vector<Individual>& pop, const Archive& archive) {
    std::vector<Genome> cands;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& ind : pop) {
        if (ind.rank != 0) continue;
        if (!seen.insert(genome_hash(ind.genome)).second) continue;
        if (archive.contains(ind.genome)) continue;
        cands.push_back(ind.genome);
    }
    return cands;
}

void iterate_pareto(DriverState& st, Evaluator& ev, const RunConfig& cfg, int t) {
    const TrainingSet ts = archive_training_set(st.archive);
    SwitchResult sw = adaptive_switch(ts, derive_seed(cfg.seed, "adaptive-switch", t));
    const auto names = cfg.complexity_names();

    auto fn = [&](const std::vector<Genome>& gs) {
        const auto preds = sw.model.predict(gs);
        std::vector<ObjectiveVector> out(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) {
            ObjectiveVector v;
            v.reserve(1 + names.size());
            v.push_back(-preds[i]);
            const ComplexityVector cv = complexity(gs[i], cfg.backbone);
            for (const auto& n : names) v.push_back(complexity_component(cv, n));
            out[i] = std::move(v);
        }
        return out;
    };
    const auto pop = evolve(cfg.space, cfg.inner, fn, derive_seed(cfg.seed, "inner-moea", t));
    const std::vector<Genome> cands = screen_candidates(pop, st.archive);

    MetricsRow row;
    row.iteration = t;
    row.model = to_string(sw.model.id);
    row.cv_tau = winner_tau(sw);

    if (!cands.empty()) {
        const auto preds = sw.model.predict(cands);
        std::vector<std::vector<double>> cand_cplx(cands.size());
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const ComplexityVector cv = complexity(cands[i], cfg.backbone);
            for (const auto& n : names) cand_cplx[i].push_back(complexity_component(cv, n));
        }
        std::vector<std::vector<double>> front_cplx;
        for (std::size_t idx : st.archive.front_indices())
            front_cplx.push_back(st.archive.at(idx).complexities);
        std::vector<double> ranges;
        for (std::size_t j = 1; j < cfg.objectives.size(); ++j)
            ranges.push_back(st.hv.upper[j] - st.hv.lower[j]);

        const auto chosen = subset_select(preds, cand_cplx, front_cplx, ranges, cfg.batch);
        std::vector<Genome> batch_g;
        std::vector<double> batch_pred;
        for (std::size_t c : chosen) {
            batch_g.push_back(cands[c]);
            batch_pred.push_back(preds[c]);
        }
        const auto results = evaluate_genomes(ev, cfg, batch_g, st.next_id);
        std::vector<double> truth;
        for (std::size_t i = 0; i < batch_g.size(); ++i) {
            st.archive.insert(make_entry(cfg, batch_g[i], results[i], t));
            truth.push_back(results[i].accuracy);
        }
        row.batch_rmse = rmse(batch_pred, truth);
        try {
            row.batch_spearman = spearman(batch_pred, truth);
        } catch (const AllTied&) {
        }
    }
    // An empty candidate pool (everything rediscovered) skips evaluation; the
    // row still records the iteration so the gap is visible downstream.
    row.evaluations = static_cast<int>(st.archive.size());
    row.hypervolume = archive_hv(st, cfg);
    st.metrics.push_back(row);
    st.model = std::move(sw.model);
}

int hamming(const Genome& a, const Genome& b) {
    int d = 0;
    for (int i = 0; i < kGeneCount; ++i) d += a.genes[i] != b.genes[i];
    return d;
}

void iterate_scalar(DriverState& st, Evaluator& ev, const RunConfig& cfg, int t) {
    const TrainingSet ts = archive_training_set(st.archive);
    SwitchResult sw = adaptive_switch(ts, derive_seed(cfg.seed, "adaptive-switch", t));

    auto fit = [&](const std::vector<Genome>& gs) {
        const auto preds = sw.model.predict(gs);
        std::vector<double> f(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) {
            const ComplexityVector cv = complexity(gs[i], cfg.backbone);
            f[i] = scalarize(preds[i], complexity_component(cv, cfg.scalar.objective),
                             cfg.scalar.target, cfg.scalar.exponent);
        }
        return f;
    };
    const auto pop = evolve_scalar(cfg.space, cfg.inner, fit, derive_seed(cfg.seed, "inner-scalar", t));

    std::vector<Genome> cands;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& ind : pop) {
        if (!seen.insert(genome_hash(ind.genome)).second) continue;
        if (st.archive.contains(ind.genome)) continue;
        cands.push_back(ind.genome);
    }

    MetricsRow row;
    row.iteration = t;
    row.model = to_string(sw.model.id);
    row.cv_tau = winner_tau(sw);

    if (!cands.empty()) {
        const auto pred_j = fit(cands);
        std::vector<std::size_t> order(cands.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pred_j[a] > pred_j[b]; });

        std::vector<std::size_t> chosen;
        if (cands.size() <= static_cast<std::size_t>(cfg.batch)) {
            chosen = order;
        } else {
            // Top predicted scores fill all but one slot; the last slot goes
            // to the remaining candidate farthest (max-min Hamming) from the
            // picks and the archive, keeping some exploration in the batch.
            chosen.assign(order.begin(), order.begin() + (cfg.batch - 1));
            std::vector<const Genome*> anchors;
            for (std::size_t c : chosen) anchors.push_back(&cands[c]);
            for (const auto& e : st.archive.entries()) anchors.push_back(&e.genome);
            std::size_t best = order[cfg.batch - 1];
            int best_gap = -1;
            for (std::size_t k = cfg.batch - 1; k < order.size(); ++k) {
                int gap = kGeneCount + 1;
                for (const Genome* a : anchors) gap = std::min(gap, hamming(cands[order[k]], *a));
                if (gap > best_gap) {
                    best_gap = gap;
                    best = order[k];
                }
            }
            chosen.push_back(best);
        }

        std::vector<Genome> batch_g;
        std::vector<double> batch_pred;
        for (std::size_t c : chosen) {
            batch_g.push_back(cands[c]);
            batch_pred.push_back(pred_j[c]);
        }
        const auto results = evaluate_genomes(ev, cfg, batch_g, st.next_id);
        const std::size_t before = st.archive.size();
        for (std::size_t i = 0; i < batch_g.size(); ++i)
            st.archive.insert(make_entry(cfg, batch_g[i], results[i], t));
        extend_trajectory(st, cfg, before);

        std::vector<double> true_j;
        for (std::size_t i = before; i < st.archive.size(); ++i)
            true_j.push_back(entry_scalar(cfg, st.archive.at(i)));
        row.batch_rmse = rmse(batch_pred, true_j);
        try {
            row.batch_spearman = spearman(batch_pred, true_j);
        } catch (const AllTied&) {
        }
    }
    row.evaluations = static_cast<int>(st.archive.size());
    row.hypervolume = archive_hv(st, cfg);
    row.best_scalar = st.trajectory.back();
    st.metrics.push_back(row);
    st.model = std::move(sw.model);
}

json state_to_payload(const DriverState& st, const RunConfig& cfg, const char* mode) {
    json archive = json::array();
    for (const auto& e : st.archive.entries())
        archive.push_back(json{{"genome", encode_text(e.genome)},
                               {"accuracy", e.accuracy},
                               {"complexities", e.complexities},
                               {"iteration", e.iteration},
                               {"evaluator", e.evaluator_id}});
    json metrics = json::array();
    for (const auto& r : st.metrics)
        metrics.push_back(json{{"iteration", r.iteration},
                               {"evaluations", r.evaluations},
                               {"hypervolume", jnum(r.hypervolume)},
                               {"model", r.model},
                               {"cv_tau", jnum(r.cv_tau)},
                               {"batch_spearman", jnum(r.batch_spearman)},
                               {"batch_rmse", jnum(r.batch_rmse)},
                               {"best_scalar", jnum(r.best_scalar)}});
    return json{{"mode", mode},
                {"config_hash", config_hash_hex(cfg)},
                {"iteration", st.completed_iteration},
                {"next_request_id", st.next_id},
                {"hv", json{{"lower", st.hv.lower}, {"upper", st.hv.upper}, {"reference", st.hv.reference}}},
                {"archive", std::move(archive)},
                {"metrics", std::move(metrics)},
                {"model", st.model ? st.model->to_json() : json(nullptr)}};
}

void save_state(const DriverState& st, const RunConfig& cfg, const char* mode) {
    if (cfg.checkpoint_path.empty()) return;
    write_checkpoint_file(cfg.checkpoint_path, state_to_payload(st, cfg, mode));
}

DriverState restore_state(const RunConfig& cfg, const std::string& path, const char* mode,
                          bool scalar_mode) {
    const json payload = read_checkpoint_file(path);
    DriverState st;
    try {
        if (payload.at("mode").get<std::string>() != mode)
            throw CorruptCheckpoint("checkpoint belongs to a different run mode");
        if (payload.at("config_hash").get<std::string>() != config_hash_hex(cfg))
            throw CorruptCheckpoint("checkpoint was written under a different configuration");
        st.completed_iteration = payload.at("iteration").get<int>();
        st.next_id = payload.at("next_request_id").get<std::uint64_t>();
        st.hv.lower = payload.at("hv").at("lower").get<std::vector<double>>();
        st.hv.upper = payload.at("hv").at("upper").get<std::vector<double>>();
        st.hv.reference = payload.at("hv").at("reference").get<std::vector<double>>();
        for (const auto& je : payload.at("archive")) {
            EvaluatedArch e;
            e.genome = decode_text(je.at("genome").get<std::string>());
            e.accuracy = je.at("accuracy").get<double>();
            e.complexities = je.at("complexities").get<std::vector<double>>();
            e.iteration = je.at("iteration").get<int>();
            e.evaluator_id = je.at("evaluator").get<std::string>();
            st.archive.insert(std::move(e));
        }
        for (const auto& jr : payload.at("metrics")) {
            MetricsRow r;
            r.iteration = jr.at("iteration").get<int>();
            r.evaluations = jr.at("evaluations").get<int>();
            r.hypervolume = num(jr.at("hypervolume"));
            r.model = jr.at("model").get<std::string>();
            r.cv_tau = num(jr.at("cv_tau"));
            r.batch_spearman = num(jr.at("batch_spearman"));
            r.batch_rmse = num(jr.at("batch_rmse"));
            r.best_scalar = num(jr.at("best_scalar"));
            st.metrics.push_back(std::move(r));
        }
        if (!payload.at("model").is_null())
            st.model = FittedPredictor::from_json(payload.at("model"));
    } catch (const CorruptCheckpoint&) {
        throw;
    } catch (const json::exception& e) {
        throw CorruptCheckpoint(std::string("checkpoint payload malformed: ") + e.what());
    } catch (const Error& e) {
        throw CorruptCheckpoint(std::string("checkpoint payload malformed: ") + e.what());
    }
    if (st.completed_iteration < 0) throw CorruptCheckpoint("checkpoint precedes the initial design");
    if (scalar_mode) extend_trajectory(st, cfg, 0);
    return st;
}

RunResult drive(const RunConfig& cfg, DriverState st, const RunHooks& hooks, bool scalar_mode) {
    auto ev = make_evaluator(cfg.evaluator);
    const char* mode = scalar_mode ? "scalar" : "search";
    for (int t = st.completed_iteration + 1; t <= cfg.iterations; ++t) {
        if (t == 0)
            initialize(st, *ev, cfg, scalar_mode);
        else if (scalar_mode)
            iterate_scalar(st, *ev, cfg, t);
        else
            iterate_pareto(st, *ev, cfg, t);
        st.completed_iteration = t;
        save_state(st, cfg, mode);
        if (hooks.continue_after && !hooks.continue_after(t, st.archive)) break;
    }

    RunResult res;
    res.hv = st.hv;
    res.metrics = std::move(st.metrics);
    res.front0 = st.archive.front_indices();
    res.last_model = std::move(st.model);
    if (scalar_mode) {
        res.trajectory = std::move(st.trajectory);
        res.best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < st.archive.size(); ++i) {
            const double j = entry_scalar(cfg, st.archive.at(i));
            if (j > res.best_value) {
                res.best_value = j;
                res.best_index = i;
            }
        }
    }
    res.archive = std::move(st.archive);
    return res;
}

} // namespace

RunResult run_search(const RunConfig& cfg, const RunHooks& hooks) {
    cfg.validate(false);
    return drive(cfg, DriverState{}, hooks, false);
}

RunResult run_scalarized(const RunConfig& cfg, const RunHooks& hooks) {
    cfg.validate(true);
    return drive(cfg, DriverState{}, hooks, true);
}

RunResult resume_search(const RunConfig& cfg, const std::string& checkpoint_path,
                        const RunHooks& hooks) {
    cfg.validate(false);
    return drive(cfg, restore_state(cfg, checkpoint_path, "search", false), hooks, false);
}

RunResult resume_scalarized(const RunConfig& cfg, const std::string& checkpoint_path,
                            const RunHooks& hooks) {
    cfg.validate(true);
    return drive(cfg, restore_state(cfg, checkpoint_path, "scalar", true), hooks, true);
}

} // namespace sanas
