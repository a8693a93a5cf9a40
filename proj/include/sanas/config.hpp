#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "sanas/driver.hpp"

namespace sanas {

// Canonical JSON image of a run configuration. Every field is emitted with
// its current value, so the dump is a stable fingerprint of the experiment.
// checkpoint_path and init_distribution are runtime concerns and excluded.
nlohmann::json run_config_to_json(const RunConfig& cfg);

// Strict inverse: unknown keys raise InvalidConfig (typos must not silently
// fall back to defaults). Absent keys keep their defaults.
RunConfig run_config_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& cfg, const std::string& path);

// 16 hex digits of fnv1a64(run_config_to_json(cfg).dump()); stamped into
// every artifact header and into checkpoints.
std::string config_hash_hex(const RunConfig& cfg);

} // namespace sanas
