#pragma once

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "agdn/experiments.hpp"

namespace agdn {

/// JSON forms. Unknown keys and wrong types raise ConfigError; omitted keys
/// keep the ExperimentConfig defaults.
///
///   policy:   {"type": "fixed", "mu": 0, "sigma": 1}
///             {"type": "iid_uniform_box"}
///             {"type": "two_point_switch", "p": 0.5}
///             {"type": "block_switch", "block_len": 1000}
///             {"type": "custom", "schedule": [[mu, sigma], ...]}
///   noise:    {"mu_lo": .., "mu_hi": .., "sigma_lo": .., "sigma_hi": ..}
///   detector: "optimal" | "min_distance" | {"threshold": t}
///   gains:    "rayleigh" | [[re, im], ...]
nlohmann::json to_json(const ScenarioPolicy& p);
ScenarioPolicy policy_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiseModel& n);
NoiseModel noise_from_json(const nlohmann::json& j);

/// Canonical form used for manifests and hashing; `threads` is left out
/// because it never affects results.
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a.
std::uint64_t fnv1a_64(std::string_view bytes) noexcept;

/// fnv1a_64 of the compact dump of to_json(cfg).
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace agdn
