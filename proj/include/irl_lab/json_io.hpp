#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "irl_lab/ensemble.hpp"
#include "irl_lab/geometry.hpp"
#include "irl_lab/harness.hpp"
#include "irl_lab/mdp.hpp"

namespace irl_lab {

// Instance schema: {"n": int, "k": int, "gamma": float,
//   "transitions": [[[float]]] (action-major, row-major),
//   "reward": [float] | null, "beta": float | null}
nlohmann::json instance_to_json(const IrlInstance& inst);
IrlInstance instance_from_json(const nlohmann::json& j);

void save_instance(const IrlInstance& inst, const std::string& path);
IrlInstance load_instance(const std::string& path);

nlohmann::json config_to_json(const EnsembleConfig& cfg);
EnsembleConfig config_from_json(const nlohmann::json& j);

// Debug dump of a code as an array of point-coordinate arrays.
nlohmann::json code_to_json(const SphericalCode& code);

nlohmann::json report_to_json(const VerificationReport& rep);

// Writes one instance file per facet plus manifest.json carrying the config
// and the verification report. Returns the instance file names.
std::vector<std::string> write_ensemble_dir(const std::vector<HardInstance>& ensemble,
                                            const VerificationReport& rep,
                                            const std::string& dir);

struct LoadedEnsemble {
    EnsembleConfig config;
    std::vector<IrlInstance> instances;
};

LoadedEnsemble load_ensemble_dir(const std::string& dir);

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace irl_lab
