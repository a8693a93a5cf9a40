#pragma once

#include <string>

#include "sanas/driver.hpp"
#include "sanas/experiments.hpp"

namespace sanas {

// Creates dir (parents included). A non-empty existing dir is refused unless
// force is set; files already present are overwritten either way.
void prepare_out_dir(const std::string& dir, bool force);

// Writes the full artifact set of a run into dir:
//   config.json   effective configuration (the hash source)
//   archive.csv   every evaluated design: genome, accuracy, complexities,
//                 iteration, evaluator
//   front0.csv    the non-dominated rows of archive.csv
//   metrics.csv   per-iteration progress log
//   front.svg     accuracy vs first complexity scatter (two objectives only)
// Scalar runs add trajectory.csv and best.json. Every artifact starts with a
// "config_hash=<hex>" comment so provenance survives copying files around.
void write_run_artifacts(const std::string& dir, const RunConfig& cfg, const RunResult& res,
                         bool scalar_mode);

void write_surrogate_study_artifacts(const std::string& dir,
                                     const std::vector<SurrogateStudyRow>& rows,
                                     const std::string& header_comment);

void write_efficiency_study_artifacts(const std::string& dir, const EfficiencyStudy& study,
                                      const std::string& header_comment);

void write_analyze_artifacts(const std::string& dir, const AnalyzeReport& rep,
                             const std::string& header_comment);

} // namespace sanas
