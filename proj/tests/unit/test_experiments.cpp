#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "momdist/common.hpp"
#include "momdist/experiments.hpp"

using namespace momdist;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("momdist_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentSpec tiny_influence(const std::filesystem::path& dir, std::uint64_t seed) {
  return spec_from_json({{"name", "influence"},
                         {"seed", seed},
                         {"output_dir", dir.string()},
                         {"parameters", {{"m_values", {10, 90}}, {"replicates", 2}, {"eval_resolution", 0.5}}}});
}

}  // namespace

TEST_CASE("every experiment has defaults") {
  for (const auto& name : experiment_names()) CHECK(default_parameters(name).is_object());
  CHECK_THROWS_AS(default_parameters("nope"), Error);
}

TEST_CASE("missing parameter is named in the error") {
  const auto dir = scratch("missing");
  auto params = default_parameters("influence");
  params.erase("eval_box");
  const ExperimentSpec spec{"influence", params, 0, dir};
  try {
    run_experiment(spec);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("eval_box") != std::string::npos);
  }
  CHECK_THROWS_AS(spec_from_json(json{{"seed", 1}}), Error);
  const auto bare = spec_from_json({{"name", "highdim"}}, false);
  CHECK(bare.parameters.empty());
}

TEST_CASE("influence run writes a manifest and is reproducible") {
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  const auto ra = run_experiment(tiny_influence(a, 5));
  const auto rb = run_experiment(tiny_influence(b, 5));
  CHECK(ra.summary == rb.summary);
  CHECK(slurp(a / "influence_replicates.csv") == slurp(b / "influence_replicates.csv"));
  const auto manifest = json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["experiment"] == "influence");
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["software_version"] == MOMDIST_VERSION);
  CHECK(manifest["parameters"]["replicates"] == 2);
  for (const auto& f : ra.files) CHECK(std::filesystem::exists(a / f));
  CHECK(ra.summary["domination_holds"] == true);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}
