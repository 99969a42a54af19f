#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momdist/diagram_metrics.hpp"
#include "momdist/radii.hpp"
#include "momdist/sublevel_grid.hpp"

namespace momdist {

enum class Pipeline { Weighted, Sublevel };

/// Settings that turn a block count into a persistence diagram.
struct DiagramSettings {
  PowerParam p = PowerParam::finite(1.0);
  std::size_t max_dim = 2;
  std::optional<double> t_max;
  std::uint64_t partition_seed = 0;
  bool shuffle = true;
  // Sublevel pipeline only. Without a box the padded data bounds are used.
  double grid_resolution = 0.5;
  std::optional<BoundingBox> grid_box;
};

/// Diagram of the MoM-weighted filtration (or MoM sublevel grid) with Q blocks.
PersistenceDiagram momdist_diagram(const PointCloud& cloud, std::size_t num_blocks, Pipeline pipeline,
                                   const DiagramSettings& settings);

struct LepskiConfig {
  std::size_t m_min = 1;
  std::size_t m_max = 1;
  double theta = 1.5;
  double delta = 0.05;
  StandardCondition ab;
  int dim = kAllDims;  // diagram dimension compared by the bottleneck distance
  void validate(std::size_t n) const;
};

struct Rung {
  std::size_t j = 0;
  std::size_t m = 0;
  std::size_t num_blocks = 0;
  double radius = 0.0;
};

struct Comparison {
  std::size_t j = 0, j_other = 0;
  double distance = 0.0;
  double threshold = 0.0;
};

struct SelectionTrace {
  std::string method;
  std::vector<Rung> ladder;
  std::vector<Comparison> comparisons;
  std::size_t chosen_j = 0;
  std::size_t chosen_m = 0;
  std::size_t chosen_q = 0;
  /// True when no rung passed a nonvacuous test: the last rung is returned.
  bool no_admissible_rung = false;
  // Resampling heuristic curve (Q, summed pairwise distance).
  std::vector<std::pair<std::size_t, double>> curve;
};

nlohmann::json trace_to_json(const SelectionTrace& trace);

/// Rungs j >= 1 with m_min <= theta^j m_min < theta m_max; m(j) is floored,
/// duplicates are dropped and Q(j) = 2 m(j) + 1 must not exceed n.
std::vector<Rung> lepski_ladder(const LepskiConfig& config, std::size_t n);

/// The selection rule alone: smallest rung index i such that
/// distance(i, k) <= 2 radius[k] for all k > i. distance(i, k) is queried
/// lazily. Returns the rung index and fills `comparisons` (j = rung index).
std::size_t lepski_rule(const std::vector<double>& radii,
                        const std::function<double(std::size_t, std::size_t)>& distance,
                        std::vector<Comparison>* comparisons = nullptr);

SelectionTrace lepski_select(const PointCloud& cloud, const LepskiConfig& config, Pipeline pipeline,
                             const DiagramSettings& settings);

struct HeuristicConfig {
  std::vector<std::size_t> q_grid;
  std::size_t replicates = 10;  // N
  std::uint64_t seed = 0;
  int dim = kAllDims;
};

/// argmin over Q of the summed pairwise bottleneck distances between
/// diagrams of N random block assignments; ties go to the smaller Q.
SelectionTrace heuristic_q(const PointCloud& cloud, const HeuristicConfig& config, const DiagramSettings& settings);

/// m_R = floor(Q_R / 2); bounds (max(1, floor(m_R / C)), max(1, ceil(C m_R))).
std::pair<std::size_t, std::size_t> derive_bounds_from_heuristic(std::size_t q_hat, double c);

}  // namespace momdist
