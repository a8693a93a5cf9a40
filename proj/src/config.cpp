#include "sanas/config.hpp"

#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>

#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw InvalidConfig(std::string(where) + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) throw InvalidConfig("unknown key \"" + item.key() + "\" in " + where);
    }
}

template <typename T>
void read_into(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidConfig(std::string("bad value for \"") + key + "\"");
    }
}

json space_to_json(const SearchSpace& space) {
    json blocks = json::array();
    for (int b = 0; b < kBlockCount; ++b) {
        const BlockChoices& c = space.block(b);
        blocks.push_back(json{{"depths", c.depths},
                              {"kernels", c.kernel_codes},
                              {"expansions", c.expansion_codes}});
    }
    return json{{"resolutions", space.resolution_indices()}, {"blocks", blocks}};
}

SearchSpace space_from_json(const json& j) {
    check_keys(j, "space", {"resolutions", "blocks"});
    SearchSpace full = SearchSpace::full();
    std::vector<int> resolutions = full.resolution_indices();
    std::array<BlockChoices, kBlockCount> blocks;
    for (int b = 0; b < kBlockCount; ++b) blocks[b] = full.block(b);
    read_into(j, "resolutions", resolutions);
    if (j.contains("blocks")) {
        const json& jb = j.at("blocks");
        if (!jb.is_array() || jb.size() != kBlockCount)
            throw InvalidConfig("space.blocks must list all five blocks");
        for (int b = 0; b < kBlockCount; ++b) {
            check_keys(jb[b], "space.blocks[]", {"depths", "kernels", "expansions"});
            read_into(jb[b], "depths", blocks[b].depths);
            read_into(jb[b], "kernels", blocks[b].kernel_codes);
            read_into(jb[b], "expansions", blocks[b].expansion_codes);
        }
    }
    return SearchSpace(std::move(resolutions), std::move(blocks));
}

json latency_to_json(const LatencyModel& m) {
    return json{{"per_madd", m.per_madd}, {"per_layer", m.per_layer}};
}

void latency_from_json(const json& j, const char* where, LatencyModel& m) {
    check_keys(j, where, {"per_madd", "per_layer"});
    read_into(j, "per_madd", m.per_madd);
    read_into(j, "per_layer", m.per_layer);
}

json backbone_to_json(const BackboneSpec& b) {
    return json{{"stem_channels", b.stem_channels},
                {"block_channels", b.block_channels},
                {"block_stride2", b.block_stride2},
                {"head_channels", b.head_channels},
                {"class_count", b.class_count},
                {"latency",
                 json{{"cpu", latency_to_json(b.latency.cpu)}, {"gpu", latency_to_json(b.latency.gpu)}}}};
}

BackboneSpec backbone_from_json(const json& j) {
    check_keys(j, "backbone",
               {"stem_channels", "block_channels", "block_stride2", "head_channels", "class_count",
                "latency"});
    BackboneSpec b;
    read_into(j, "stem_channels", b.stem_channels);
    read_into(j, "block_channels", b.block_channels);
    read_into(j, "block_stride2", b.block_stride2);
    read_into(j, "head_channels", b.head_channels);
    read_into(j, "class_count", b.class_count);
    if (j.contains("latency")) {
        check_keys(j.at("latency"), "backbone.latency", {"cpu", "gpu"});
        if (j.at("latency").contains("cpu"))
            latency_from_json(j.at("latency").at("cpu"), "backbone.latency.cpu", b.latency.cpu);
        if (j.at("latency").contains("gpu"))
            latency_from_json(j.at("latency").at("gpu"), "backbone.latency.gpu", b.latency.gpu);
    }
    return b;
}

json evaluator_to_json(const EvaluatorConfig& e) {
    return json{{"kind", e.kind},
                {"variant", to_string(e.synthetic.variant)},
                {"sigma", e.synthetic.sigma},
                {"noise_seed", e.synthetic.noise_seed},
                {"table", e.table_path},
                {"command", e.command},
                {"timeout_s", e.timeout_s},
                {"retries", e.max_retries}};
}

EvaluatorConfig evaluator_from_json(const json& j) {
    check_keys(j, "evaluator",
               {"kind", "variant", "sigma", "noise_seed", "table", "command", "timeout_s", "retries"});
    EvaluatorConfig e;
    read_into(j, "kind", e.kind);
    if (j.contains("variant")) {
        std::string v;
        read_into(j, "variant", v);
        e.synthetic.variant = synthetic_variant_from_string(v);
    }
    read_into(j, "sigma", e.synthetic.sigma);
    read_into(j, "noise_seed", e.synthetic.noise_seed);
    read_into(j, "table", e.table_path);
    read_into(j, "command", e.command);
    read_into(j, "timeout_s", e.timeout_s);
    read_into(j, "retries", e.max_retries);
    return e;
}

json inner_to_json(const NsgaConfig& c) {
    return json{{"population", c.population},
                {"generations", c.generations},
                {"crossover_prob", c.crossover_prob},
                {"gene_swap_prob", c.gene_swap_prob},
                {"mutation_prob", c.mutation_prob}};
}

NsgaConfig inner_from_json(const json& j) {
    check_keys(j, "inner", {"population", "generations", "crossover_prob", "gene_swap_prob", "mutation_prob"});
    NsgaConfig c;
    read_into(j, "population", c.population);
    read_into(j, "generations", c.generations);
    read_into(j, "crossover_prob", c.crossover_prob);
    read_into(j, "gene_swap_prob", c.gene_swap_prob);
    read_into(j, "mutation_prob", c.mutation_prob);
    return c;
}

json scalar_to_json(const ScalarConfig& s) {
    return json{{"target", s.target}, {"exponent", s.exponent}, {"objective", s.objective}};
}

ScalarConfig scalar_from_json(const json& j) {
    check_keys(j, "scalar", {"target", "exponent", "objective"});
    ScalarConfig s;
    read_into(j, "target", s.target);
    read_into(j, "exponent", s.exponent);
    read_into(j, "objective", s.objective);
    return s;
}

} // namespace

json run_config_to_json(const RunConfig& cfg) {
    return json{{"n_init", cfg.n_init},
                {"iterations", cfg.iterations},
                {"batch", cfg.batch},
                {"seed", cfg.seed},
                {"objectives", cfg.objectives},
                {"space", space_to_json(cfg.space)},
                {"backbone", backbone_to_json(cfg.backbone)},
                {"evaluator", evaluator_to_json(cfg.evaluator)},
                {"inner", inner_to_json(cfg.inner)},
                {"hv_margin", cfg.hv_margin},
                {"scalar", scalar_to_json(cfg.scalar)},
                {"transfer_from", cfg.transfer_from}};
}

RunConfig run_config_from_json(const json& j) {
    check_keys(j, "config",
               {"n_init", "iterations", "batch", "seed", "objectives", "space", "backbone", "evaluator",
                "inner", "hv_margin", "scalar", "transfer_from"});
    RunConfig cfg;
    read_into(j, "n_init", cfg.n_init);
    read_into(j, "iterations", cfg.iterations);
    read_into(j, "batch", cfg.batch);
    read_into(j, "seed", cfg.seed);
    read_into(j, "objectives", cfg.objectives);
    if (j.contains("space")) cfg.space = space_from_json(j.at("space"));
    if (j.contains("backbone")) cfg.backbone = backbone_from_json(j.at("backbone"));
    if (j.contains("evaluator")) cfg.evaluator = evaluator_from_json(j.at("evaluator"));
    if (j.contains("inner")) cfg.inner = inner_from_json(j.at("inner"));
    read_into(j, "hv_margin", cfg.hv_margin);
    if (j.contains("scalar")) cfg.scalar = scalar_from_json(j.at("scalar"));
    read_into(j, "transfer_from", cfg.transfer_from);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidConfig("config is not valid JSON: " + std::string(e.what()));
    }
    return run_config_from_json(j);
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write config file: " + path);
    out << run_config_to_json(cfg).dump(2) << '\n';
}

std::string config_hash_hex(const RunConfig& cfg) {
    const std::uint64_t h = fnv1a64(run_config_to_json(cfg).dump());
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[i] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

} // namespace sanas
