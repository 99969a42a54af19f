#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace momdist {

/// One experiment run. `parameters` must hold every key the experiment
/// reads; default_parameters() lists them with their stock values.
struct ExperimentSpec {
  std::string name;  // adaptive_q | sublevel_compare | highdim | image_recover | influence
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
};

struct ExperimentResult {
  nlohmann::json summary;
  std::vector<std::string> files;  // relative to output_dir
};

std::vector<std::string> experiment_names();

/// Stock parameters of an experiment.
nlohmann::json default_parameters(const std::string& name);

/// Parses {"name": ..., "seed": ..., "output_dir": ..., "parameters": {...}}.
/// Keys missing from "parameters" are filled from default_parameters() when
/// `fill_defaults` is set.
ExperimentSpec spec_from_json(const nlohmann::json& j, bool fill_defaults = true);

/// Runs the experiment and writes its artifacts plus manifest.json into
/// output_dir (created if needed). Throws Error naming the first missing
/// parameter.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace momdist
