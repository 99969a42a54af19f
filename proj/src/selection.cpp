#include "momdist/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "momdist/rng.hpp"

namespace momdist {

PersistenceDiagram momdist_diagram(const PointCloud& cloud, std::size_t num_blocks, Pipeline pipeline,
                                   const DiagramSettings& settings) {
  const WeightFunction f(cloud, weight::MomDist{num_blocks, settings.partition_seed, settings.shuffle});
  if (pipeline == Pipeline::Weighted) {
    const auto w = f.evaluate(cloud);
    return weighted_rips_diagram(cloud, w, settings.p, settings.max_dim, settings.t_max);
  }
  if (cloud.dim() != 2) throw Error("grid sublevel is 2-D only");
  BoundingBox box;
  if (settings.grid_box) {
    box = *settings.grid_box;
  } else {
    const auto w = f.evaluate(cloud);
    box = padded_bounds(cloud, *std::max_element(w.begin(), w.end()));
  }
  return lower_star_diagram(sample_grid(f, box, settings.grid_resolution));
}

void LepskiConfig::validate(std::size_t n) const {
  ab.validate();
  if (m_min < 1 || m_min > m_max) throw Error("need 1 <= m_min <= m_max");
  if (2 * m_max >= n) throw Error("need m_max < n/2");
  if (!(theta > 1.0)) throw Error("need theta > 1");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("need 0 < delta < 1");
}

std::vector<Rung> lepski_ladder(const LepskiConfig& config, std::size_t n) {
  std::vector<Rung> ladder;
  const double top = config.theta * static_cast<double>(config.m_max);
  double level = static_cast<double>(config.m_min);
  for (std::size_t j = 1;; ++j) {
    level *= config.theta;
    if (!(level < top)) break;
    const auto m = static_cast<std::size_t>(std::floor(level * (1.0 + 1e-12)));
    if (2 * m + 1 > n) break;
    if (!ladder.empty() && ladder.back().m == m) continue;
    ladder.push_back({j, m, 2 * m + 1, 0.0});
  }
  return ladder;
}

std::size_t lepski_rule(const std::vector<double>& radii,
                        const std::function<double(std::size_t, std::size_t)>& distance,
                        std::vector<Comparison>* comparisons) {
  if (radii.empty()) throw Error("m bounds produce no rungs");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    bool ok = true;
    for (std::size_t k = i + 1; k < radii.size(); ++k) {
      const double d = distance(i, k);
      const double threshold = 2.0 * radii[k];
      if (comparisons) comparisons->push_back({i, k, d, threshold});
      if (!(d <= threshold)) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return radii.size() - 1;  // unreachable: the last rung passes vacuously
}

SelectionTrace lepski_select(const PointCloud& cloud, const LepskiConfig& config, Pipeline pipeline,
                             const DiagramSettings& settings) {
  cloud.require_nonempty();
  const std::size_t n = cloud.size();
  config.validate(n);
  if (pipeline == Pipeline::Sublevel && cloud.dim() != 2) throw Error("grid sublevel is 2-D only");

  SelectionTrace trace;
  trace.method = pipeline == Pipeline::Weighted ? "lepski-weighted" : "lepski-sublevel";
  trace.ladder = lepski_ladder(config, n);
  if (trace.ladder.empty()) throw Error("m bounds produce no rungs");

  std::vector<double> radii;
  for (auto& r : trace.ladder) {
    const double m = static_cast<double>(r.m);
    r.radius = pipeline == Pipeline::Weighted
                   ? radius_h(static_cast<double>(n), m, config.delta, static_cast<double>(config.m_max), config.ab)
                   : radius_p(static_cast<double>(n), m, config.delta, config.ab);
    radii.push_back(r.radius);
  }

  std::vector<std::optional<PersistenceDiagram>> diagrams(trace.ladder.size());
  auto diagram = [&](std::size_t i) -> const PersistenceDiagram& {
    if (!diagrams[i]) diagrams[i] = momdist_diagram(cloud, trace.ladder[i].num_blocks, pipeline, settings);
    return *diagrams[i];
  };
  std::vector<Comparison> comps;
  const std::size_t chosen = lepski_rule(
      radii, [&](std::size_t i, std::size_t k) { return bottleneck_distance(diagram(i), diagram(k), config.dim); },
      &comps);
  for (auto& c : comps) {
    c.j = trace.ladder[c.j].j;
    c.j_other = trace.ladder[c.j_other].j;
  }
  trace.comparisons = std::move(comps);
  trace.chosen_j = trace.ladder[chosen].j;
  trace.chosen_m = trace.ladder[chosen].m;
  trace.chosen_q = trace.ladder[chosen].num_blocks;
  trace.no_admissible_rung = chosen + 1 == trace.ladder.size() && trace.ladder.size() > 1;
  return trace;
}

SelectionTrace heuristic_q(const PointCloud& cloud, const HeuristicConfig& config, const DiagramSettings& settings) {
  cloud.require_nonempty();
  const std::size_t n = cloud.size();
  if (config.replicates < 2) throw Error("heuristic needs at least two replicates");
  if (config.q_grid.empty()) throw Error("invalid grid: no block counts");
  for (std::size_t q : config.q_grid)
    if (q < 1 || q > n) throw Error("invalid grid: block count outside [1, n]");

  SelectionTrace trace;
  trace.method = "resample";
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> grid = config.q_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (std::size_t q : grid) {
    std::vector<PersistenceDiagram> diagrams(config.replicates);
    parallel_for(config.replicates, [&](std::size_t r) {
      DiagramSettings s = settings;
      s.partition_seed = derive_seed(config.seed, r);
      s.shuffle = true;
      diagrams[r] = momdist_diagram(cloud, q, Pipeline::Weighted, s);
    });
    double total = 0.0;
    for (std::size_t a = 0; a < diagrams.size(); ++a)
      for (std::size_t b = a + 1; b < diagrams.size(); ++b) total += bottleneck_distance(diagrams[a], diagrams[b], config.dim);
    trace.curve.emplace_back(q, total);
    if (total < best) {
      best = total;
      trace.chosen_q = q;
    }
  }
  trace.chosen_m = trace.chosen_q / 2;
  return trace;
}

std::pair<std::size_t, std::size_t> derive_bounds_from_heuristic(std::size_t q_hat, double c) {
  if (q_hat < 1) throw Error("Q_hat must be at least 1");
  if (!(c > 1.0)) throw Error("C must exceed 1");
  const std::size_t m = q_hat / 2;
  const auto lo = static_cast<std::size_t>(std::floor(static_cast<double>(m) / c));
  const auto hi = static_cast<std::size_t>(std::ceil(c * static_cast<double>(m)));
  return {std::max<std::size_t>(1, lo), std::max<std::size_t>(1, hi)};
}

nlohmann::json trace_to_json(const SelectionTrace& t) {
  nlohmann::json j;
  j["method"] = t.method;
  auto ladder = nlohmann::json::array();
  for (const auto& r : t.ladder) ladder.push_back({{"j", r.j}, {"m", r.m}, {"Q", r.num_blocks}, {"radius", r.radius}});
  j["ladder"] = ladder;
  auto comps = nlohmann::json::array();
  for (const auto& c : t.comparisons)
    comps.push_back({{"j", c.j}, {"j_other", c.j_other}, {"distance", c.distance}, {"threshold", c.threshold}});
  j["comparisons"] = comps;
  auto curve = nlohmann::json::array();
  for (const auto& [q, v] : t.curve) curve.push_back({{"Q", q}, {"value", v}});
  j["curve"] = curve;
  j["chosen_j"] = t.chosen_j;
  j["chosen_m"] = t.chosen_m;
  j["chosen_Q"] = t.chosen_q;
  j["no_admissible_rung"] = t.no_admissible_rung;
  return j;
}

}  // namespace momdist
