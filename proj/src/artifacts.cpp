#include "sanas/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "sanas/config.hpp"
#include "sanas/csv.hpp"
#include "sanas/errors.hpp"
#include "sanas/svg.hpp"

namespace sanas {

namespace fs = std::filesystem;

void prepare_out_dir(const std::string& dir, bool force) {
    const fs::path p(dir);
    if (fs::exists(p)) {
        if (!fs::is_directory(p)) throw InvalidConfig(dir + " exists and is not a directory");
        if (!fs::is_empty(p) && !force)
            throw InvalidConfig(dir + " is not empty; pass --force to write into it");
    } else {
        fs::create_directories(p);
    }
}

namespace {

std::ofstream open_artifact(const fs::path& path, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write " + path.string());
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    return out;
}

std::string gene_label(int position) {
    if (position == 0) return "res";
    const int b = (position - 1) / (1 + 2 * kMaxLayers);
    const int offset = (position - 1) % (1 + 2 * kMaxLayers);
    if (offset == 0) return "b" + std::to_string(b) + ".depth";
    const int l = (offset - 1) / 2;
    const char* kind = (offset - 1) % 2 == 0 ? ".k" : ".e";
    return "b" + std::to_string(b) + kind + std::to_string(l);
}

void write_archive_rows(std::ofstream& out, const Archive& archive,
                        const std::vector<std::string>& names,
                        const std::vector<std::size_t>* only_rows) {
    std::vector<std::string> header{"genome", "accuracy"};
    header.insert(header.end(), names.begin(), names.end());
    header.push_back("iteration");
    header.push_back("evaluator");
    out << csv_join(header) << '\n';

    auto emit = [&](const EvaluatedArch& e) {
        std::vector<std::string> row{encode_text(e.genome), format_double(e.accuracy)};
        for (double c : e.complexities) row.push_back(format_double(c));
        row.push_back(std::to_string(e.iteration));
        row.push_back(e.evaluator_id);
        out << csv_join(row) << '\n';
    };
    if (only_rows) {
        for (std::size_t i : *only_rows) emit(archive.at(i));
    } else {
        for (const auto& e : archive.entries()) emit(e);
    }
}

} // namespace

void write_run_artifacts(const std::string& dir, const RunConfig& cfg, const RunResult& res,
                         bool scalar_mode) {
    const fs::path base(dir);
    const std::string comment = "config_hash=" + config_hash_hex(cfg);
    const auto names = cfg.complexity_names();

    save_run_config(cfg, (base / "config.json").string());

    {
        auto out = open_artifact(base / "archive.csv", comment);
        write_archive_rows(out, res.archive, names, nullptr);
    }
    {
        auto out = open_artifact(base / "front0.csv", comment);
        write_archive_rows(out, res.archive, names, &res.front0);
    }
    {
        auto out = open_artifact(base / "metrics.csv", comment);
        std::vector<std::string> header{"iteration",      "evaluations", "hypervolume", "model",
                                        "cv_tau",         "batch_spearman", "batch_rmse"};
        if (scalar_mode) header.push_back("best_scalar");
        out << csv_join(header) << '\n';
        for (const auto& r : res.metrics) {
            std::vector<std::string> row{std::to_string(r.iteration),
                                         std::to_string(r.evaluations),
                                         format_double(r.hypervolume),
                                         r.model,
                                         format_double(r.cv_tau),
                                         format_double(r.batch_spearman),
                                         format_double(r.batch_rmse)};
            if (scalar_mode) row.push_back(format_double(r.best_scalar));
            out << csv_join(row) << '\n';
        }
    }

    if (cfg.objectives.size() == 2) {
        SvgSeries all{"archive", "#9aa5b1", false, {}};
        for (const auto& e : res.archive.entries()) all.points.emplace_back(e.complexities[0], e.accuracy);
        SvgSeries front{"front", "#d62728", true, {}};
        for (std::size_t i : res.front0) {
            const auto& e = res.archive.at(i);
            front.points.emplace_back(e.complexities[0], e.accuracy);
        }
        std::ofstream out(base / "front.svg");
        if (!out) throw InvalidConfig("cannot write front.svg");
        out << svg_scatter({all, front}, "archive and non-dominated front", names[0], "accuracy",
                           comment);
    }

    if (scalar_mode) {
        {
            auto out = open_artifact(base / "trajectory.csv", comment);
            out << "evaluation,best_value\n";
            for (std::size_t i = 0; i < res.trajectory.size(); ++i)
                out << (i + 1) << ',' << format_double(res.trajectory[i]) << '\n';
        }
        const auto& best = res.archive.at(res.best_index);
        nlohmann::json j{{"genome", encode_text(best.genome)},
                         {"accuracy", best.accuracy},
                         {"value", res.best_value},
                         {"config_hash", config_hash_hex(cfg)}};
        for (std::size_t k = 0; k < names.size(); ++k) j[names[k]] = best.complexities[k];
        std::ofstream out(base / "best.json");
        if (!out) throw InvalidConfig("cannot write best.json");
        out << j.dump(2) << '\n';
    }
}

void write_surrogate_study_artifacts(const std::string& dir,
                                     const std::vector<SurrogateStudyRow>& rows,
                                     const std::string& header_comment) {
    auto out = open_artifact(fs::path(dir) / "correlation_table.csv", header_comment);
    out << "model,train_size,mean_tau,sd_tau,mean_spearman,sd_spearman\n";
    for (const auto& r : rows)
        out << r.model << ',' << r.train_size << ',' << format_double(r.mean_tau) << ','
            << format_double(r.sd_tau) << ',' << format_double(r.mean_spearman) << ','
            << format_double(r.sd_spearman) << '\n';
}

void write_efficiency_study_artifacts(const std::string& dir, const EfficiencyStudy& study,
                                      const std::string& header_comment) {
    const fs::path base(dir);
    {
        auto out = open_artifact(base / "hv_curves.csv", header_comment);
        out << "# exhaustive_hv=" << format_double(study.exhaustive_hv) << '\n';
        out << "method,seed,evaluations,hypervolume\n";
        for (const auto& p : study.curves)
            out << p.method << ',' << p.seed << ',' << p.evaluations << ','
                << format_double(p.hypervolume) << '\n';
    }
    {
        auto out = open_artifact(base / "hv_summary.csv", header_comment);
        out << "# exhaustive_hv=" << format_double(study.exhaustive_hv) << '\n';
        out << "method,evaluations,mean_hv,sd_hv\n";
        for (const auto& r : study.summary)
            out << r.method << ',' << r.evaluations << ',' << format_double(r.mean_hv) << ','
                << format_double(r.sd_hv) << '\n';
    }
    {
        std::map<std::string, SvgSeries> series;
        series["random"] = SvgSeries{"random", "#9aa5b1", true, {}};
        series["surrogate"] = SvgSeries{"surrogate", "#d62728", true, {}};
        for (const auto& r : study.summary)
            if (series.count(r.method))
                series[r.method].points.emplace_back(static_cast<double>(r.evaluations), r.mean_hv);
        std::ofstream out(base / "hv_curves.svg");
        if (!out) throw InvalidConfig("cannot write hv_curves.svg");
        out << svg_scatter({series["random"], series["surrogate"]},
                           "mean hypervolume vs evaluation budget", "evaluations", "hypervolume",
                           header_comment);
    }
}

void write_analyze_artifacts(const std::string& dir, const AnalyzeReport& rep,
                             const std::string& header_comment) {
    const fs::path base(dir);
    {
        auto out = open_artifact(base / "front_table.csv", header_comment);
        std::vector<std::string> header{"genome"};
        header.insert(header.end(), rep.objective_names.begin(), rep.objective_names.end());
        out << csv_join(header) << '\n';
        for (std::size_t i : rep.front_rows) {
            std::vector<std::string> row{encode_text(rep.genomes[i])};
            for (double v : rep.objective_values[i]) row.push_back(format_double(v));
            out << csv_join(row) << '\n';
        }
    }
    {
        auto out = open_artifact(base / "gene_frequencies.csv", header_comment);
        out << "position,label,category,raw,smoothed\n";
        for (int pos = 0; pos < kGeneCount; ++pos)
            for (std::size_t c = 0; c < rep.front_frequencies.raw[pos].size(); ++c)
                out << pos << ',' << gene_label(pos) << ',' << c << ','
                    << format_double(rep.front_frequencies.raw[pos][c]) << ','
                    << format_double(rep.front_frequencies.smoothed[pos][c]) << '\n';
    }
    {
        std::vector<std::vector<double>> values(kGeneCount,
                                                std::vector<double>(kResolutionLevels, 0.0));
        std::vector<std::string> row_labels, col_labels;
        for (int pos = 0; pos < kGeneCount; ++pos) {
            row_labels.push_back(gene_label(pos));
            const auto& raw = rep.front_frequencies.raw[pos];
            for (std::size_t c = 0; c < raw.size(); ++c) values[pos][c] = raw[c];
        }
        for (int c = 0; c < kResolutionLevels; ++c) col_labels.push_back(std::to_string(c));
        std::ofstream out(base / "frequency_heatmap.svg");
        if (!out) throw InvalidConfig("cannot write frequency_heatmap.svg");
        out << svg_heatmap(values, row_labels, col_labels, "front gene frequencies", header_comment);
    }
    {
        auto out = open_artifact(base / "objective_correlations.csv", header_comment);
        std::vector<std::string> header{"objective"};
        header.insert(header.end(), rep.objective_names.begin(), rep.objective_names.end());
        out << csv_join(header) << '\n';
        for (std::size_t i = 0; i < rep.objective_names.size(); ++i) {
            std::vector<std::string> row{rep.objective_names[i]};
            for (double v : rep.correlations[i]) row.push_back(format_double(v));
            out << csv_join(row) << '\n';
        }
    }
}

} // namespace sanas
