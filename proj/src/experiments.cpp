#include "momdist/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "momdist/diagram_io.hpp"
#include "momdist/diagram_metrics.hpp"
#include "momdist/generators.hpp"
#include "momdist/rng.hpp"
#include "momdist/selection.hpp"

namespace momdist {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Typed, named access to the parameter map.
class Params {
 public:
  Params(std::string experiment, const json& j) : experiment_(std::move(experiment)), j_(j) {}

  const json& raw(const char* key) const {
    if (!j_.is_object() || !j_.contains(key)) throw Error("experiment " + experiment_ + ": missing parameter '" + key + "'");
    return j_.at(key);
  }
  double num(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_number()) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be a number");
    return v.get<double>();
  }
  std::size_t count(const char* key) const {
    const double v = num(key);
    if (v < 0.0 || v != std::floor(v)) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  bool flag(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_boolean()) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be true or false");
    return v.get<bool>();
  }
  std::string str(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_string()) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be a string");
    return v.get<std::string>();
  }
  std::vector<double> list(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_array()) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be a list");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.get<double>());
    return out;
  }
  BoundingBox box(const char* key) const {
    const auto v = list(key);
    if (v.size() != 4) throw Error("experiment " + experiment_ + ": parameter '" + key + "' must be [x0, y0, x1, y1]");
    return {v[0], v[1], v[2], v[3]};
  }
  PowerParam power(const char* key) const {
    const auto& v = raw(key);
    return v.is_string() ? PowerParam::parse(v.get<std::string>()) : PowerParam::finite(v.get<double>());
  }
  // "all" or an integer homological dimension.
  int dim(const char* key) const {
    const auto& v = raw(key);
    if (v.is_string() && v.get<std::string>() == "all") return kAllDims;
    return static_cast<int>(num(key));
  }

 private:
  std::string experiment_;
  const json& j_;
};

// Collects artifacts under the output directory.
class Artifacts {
 public:
  explicit Artifacts(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  std::ofstream open(const std::string& rel) {
    const fs::path path = root_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.precision(17);
    files_.push_back(rel);
    return out;
  }
  void json_file(const std::string& rel, const json& j) { open(rel) << j.dump(2) << '\n'; }
  void points(const std::string& rel, const PointCloud& c) {
    auto out = open(rel);
    write_csv(out, c);
  }
  void weights(const std::string& rel, const std::vector<double>& w) {
    auto out = open(rel);
    out << "index,weight\n";
    for (std::size_t i = 0; i < w.size(); ++i) out << i << ',' << w[i] << '\n';
  }
  // JSON diagram plus a dim,birth,death CSV for plotting.
  void diagram(const std::string& stem, const PersistenceDiagram& d) {
    json_file(stem + ".json", diagram_to_json(d));
    auto out = open(stem + ".csv");
    write_diagram_csv(out, d);
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

json ab_json(const StandardCondition& ab) { return {{"a", ab.a}, {"b", ab.b}}; }

LepskiConfig lepski_from(const Params& p) {
  LepskiConfig c;
  c.m_min = p.count("m_min");
  c.m_max = p.count("m_max");
  c.theta = p.num("theta");
  c.delta = p.num("delta");
  c.ab = {p.num("a"), p.num("b")};
  c.dim = p.dim("lepski_dim");
  return c;
}

// Inliers on a noisy circle followed by `m` Matern-cluster outliers.
PointCloud contaminated_circle(const Params& p, std::size_t n_inliers, std::size_t m, std::uint64_t seed) {
  auto cloud = gen_circle(n_inliers, p.num("circle_radius"), p.num("noise_sigma"), derive_seed(seed, 0));
  if (m > 0)
    cloud.append(gen_matern_exact(m, p.box("matern_window"), p.num("matern_offspring"), p.num("matern_radius"),
                                  derive_seed(seed, 1)));
  return cloud;
}

std::vector<double> top_persistence(const PersistenceDiagram& d, int dim, std::size_t k) {
  std::vector<double> v;
  for (const auto& pr : d.pairs)
    if (pr.dim == dim && !pr.essential()) v.push_back(pr.persistence());
  std::sort(v.rbegin(), v.rend());
  if (v.size() > k) v.resize(k);
  return v;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------

json run_adaptive_q(const Params& p, std::uint64_t seed, Artifacts& out) {
  const std::size_t n = p.count("n");
  const std::size_t reps = p.count("replicates");
  const std::size_t m_low = p.count("m_low"), m_high = p.count("m_high");
  if (m_low > m_high) throw Error("experiment adaptive_q: need m_low <= m_high");
  const auto cfg = lepski_from(p);
  DiagramSettings settings;
  settings.p = p.power("p");
  const bool heuristic = p.flag("run_heuristic");
  HeuristicConfig hcfg;
  if (heuristic) {
    for (double q : p.list("heuristic_q_grid")) hcfg.q_grid.push_back(static_cast<std::size_t>(q));
    hcfg.replicates = p.count("heuristic_replicates");
    hcfg.dim = p.dim("heuristic_dim");
  }

  struct Row {
    std::size_t m = 0, total = 0;
    SelectionTrace lepski, resample;
  };
  std::vector<Row> rows(reps);
  parallel_for(reps, [&](std::size_t r) {
    const std::uint64_t rs = derive_seed(seed, r);
    Rng rng(derive_seed(rs, 2));
    const std::size_t m = std::uniform_int_distribution<std::size_t>(m_low, m_high)(rng);
    const auto cloud = contaminated_circle(p, n, m, rs);
    DiagramSettings s = settings;
    s.partition_seed = derive_seed(rs, 3);
    rows[r].m = m;
    rows[r].total = cloud.size();
    rows[r].lepski = lepski_select(cloud, cfg, Pipeline::Weighted, s);
    if (heuristic) {
      HeuristicConfig h = hcfg;
      h.seed = derive_seed(rs, 4);
      rows[r].resample = heuristic_q(cloud, h, s);
    }
  });

  // Replicate 0 regenerated for a scatter plot.
  if (reps > 0) out.points("points_replicate0.csv", contaminated_circle(p, n, rows[0].m, derive_seed(seed, 0)));

  auto table = out.open("replicates.csv");
  table << "replicate,m_true,n_total,lepski_m,lepski_q,no_admissible_rung,rel_error_lepski";
  if (heuristic) table << ",heuristic_q,heuristic_m,rel_error_heuristic";
  table << '\n';
  std::size_t at_least = 0;
  std::vector<double> rel_l, rel_h;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& row = rows[r];
    const double m = static_cast<double>(row.m);
    const double el = (static_cast<double>(row.lepski.chosen_m) - m) / m;
    rel_l.push_back(el);
    at_least += row.lepski.chosen_m >= row.m;
    table << r << ',' << row.m << ',' << row.total << ',' << row.lepski.chosen_m << ',' << row.lepski.chosen_q << ','
          << (row.lepski.no_admissible_rung ? 1 : 0) << ',' << el;
    if (heuristic) {
      const double eh = (static_cast<double>(row.resample.chosen_m) - m) / m;
      rel_h.push_back(eh);
      table << ',' << row.resample.chosen_q << ',' << row.resample.chosen_m << ',' << eh;
    }
    table << '\n';
    out.json_file("traces/lepski_" + std::to_string(r) + ".json", trace_to_json(row.lepski));
    if (heuristic) out.json_file("traces/resample_" + std::to_string(r) + ".json", trace_to_json(row.resample));
  }
  if (heuristic && reps > 0) {
    auto curve = out.open("resample_curve_replicate0.csv");
    curve << "Q,summed_bottleneck\n";
    for (const auto& [q, v] : rows[0].resample.curve) curve << q << ',' << v << '\n';
  }
  json summary{{"replicates", reps},
               {"lepski_at_least_true_m", at_least},
               {"lepski_fraction_at_least_true_m", reps ? static_cast<double>(at_least) / static_cast<double>(reps) : 0.0},
               {"mean_rel_error_lepski", mean(rel_l)},
               {"standard_condition", ab_json(cfg.ab)}};
  if (heuristic) summary["mean_rel_error_heuristic"] = mean(rel_h);
  return summary;
}

// ---------------------------------------------------------------------------

json run_sublevel_compare(const Params& p, std::uint64_t seed, Artifacts& out) {
  const std::size_t n_in = p.count("n_inliers"), m = p.count("m");
  const auto cloud = contaminated_circle(p, n_in, m, seed);
  DiagramSettings s;
  s.p = p.power("p");
  s.partition_seed = derive_seed(seed, 3);
  s.grid_resolution = p.num("grid_resolution");

  std::size_t q = p.count("q");
  json summary;
  if (q == 0) {
    const auto trace = lepski_select(cloud, lepski_from(p), Pipeline::Weighted, s);
    out.json_file("lepski_trace.json", trace_to_json(trace));
    q = trace.chosen_q;
  }
  const WeightFunction f(cloud, weight::MomDist{q, s.partition_seed, true});
  const auto w = f.evaluate(cloud);
  BoundingBox box;
  const auto& box_param = p.raw("grid_box");
  if (box_param.is_string() && box_param.get<std::string>() == "auto") box = padded_bounds(cloud, *std::max_element(w.begin(), w.end()));
  else box = p.box("grid_box");
  const auto grid = sample_grid(f, box, s.grid_resolution);
  const auto sub = lower_star_diagram(grid);
  const auto wr = weighted_rips_diagram(cloud, w, s.p, 2);

  double sup_in = 0.0;
  for (std::size_t i = 0; i < n_in; ++i) sup_in = std::max(sup_in, w[i]);
  const double dist = bottleneck_distance(sub, wr, 1);
  const double bound = sup_in + s.grid_resolution * std::sqrt(2.0);

  out.points("points.csv", cloud);
  out.weights("weights.csv", w);
  {
    auto g = out.open("grid.csv");
    write_grid_csv(g, grid);
  }
  out.diagram("sublevel_diagram", sub);
  out.diagram("weighted_diagram", wr);
  summary["q"] = q;
  summary["grid_box"] = {box.x0, box.y0, box.x1, box.y1};
  summary["grid_shape"] = {grid.rows, grid.cols};
  summary["bottleneck_h1"] = dist;
  summary["sup_inlier_weight"] = sup_in;
  summary["bound"] = bound;
  summary["within_bound"] = dist <= bound;
  summary["max_h1_persistence_sublevel"] = max_persistence(sub, 1);
  summary["max_h1_persistence_weighted"] = max_persistence(wr, 1);
  return summary;
}

// ---------------------------------------------------------------------------

json run_highdim(const Params& p, std::uint64_t seed, Artifacts& out) {
  const std::size_t per = p.count("n_per_circle");
  const std::size_t dim = p.count("ambient_dim");
  const double frac = p.num("outlier_fraction");
  if (!(frac >= 0.0 && frac < 0.5)) throw Error("experiment highdim: outlier_fraction must lie in [0, 0.5)");
  const auto base = gen_interlocked_circles(per, derive_seed(seed, 0));
  auto cloud = embed_rotated(base, random_rotation(dim, derive_seed(seed, 1)));
  const std::size_t n = cloud.size();
  const auto m = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
  // Replace a random subset of the points by uniform outliers.
  Rng rng(derive_seed(seed, 2));
  auto perm = random_permutation(n, rng);
  const auto outliers = gen_uniform_box(m, p.num("outlier_low"), p.num("outlier_high"), dim, derive_seed(seed, 3));
  std::vector<char> is_outlier(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    auto dst = cloud.mutable_point(perm[i]);
    std::copy(outliers[i].begin(), outliers[i].end(), dst.begin());
    is_outlier[perm[i]] = 1;
  }

  DiagramSettings s;
  s.p = p.power("p");
  s.partition_seed = derive_seed(seed, 4);
  const auto trace = lepski_select(cloud, lepski_from(p), Pipeline::Weighted, s);
  const std::size_t q = trace.chosen_q;
  const auto w_mom = eval_weights(cloud, weight::MomDist{q, s.partition_seed, true}, cloud);
  const auto w_dtm = eval_weights(cloud, weight::Dtm{q, false}, cloud);
  const std::vector<double> zero(n, 0.0);
  const auto mom = weighted_rips_diagram(cloud, w_mom, s.p, 2);
  const auto dtm = weighted_rips_diagram(cloud, w_dtm, s.p, 2);
  const auto plain = weighted_rips_diagram(cloud, zero, s.p, 2);

  // Three coordinates for a scatter plot, plus the outlier label.
  {
    const std::size_t cols[3] = {std::min<std::size_t>(10, dim - 1), std::min<std::size_t>(52, dim - 1),
                                 std::min<std::size_t>(90, dim - 1)};
    auto f = out.open("points_projected.csv");
    f << "x" << cols[0] + 1 << ",x" << cols[1] + 1 << ",x" << cols[2] + 1 << ",outlier\n";
    for (std::size_t i = 0; i < n; ++i)
      f << cloud[i][cols[0]] << ',' << cloud[i][cols[1]] << ',' << cloud[i][cols[2]] << ',' << int(is_outlier[i]) << '\n';
  }
  out.json_file("lepski_trace.json", trace_to_json(trace));
  out.weights("weights_mom.csv", w_mom);
  out.diagram("mom_diagram", mom);
  out.diagram("dtm_diagram", dtm);
  out.diagram("plain_diagram", plain);

  auto ratio = [](const std::vector<double>& top) {
    if (top.size() < 2) return 0.0;
    const double third = top.size() > 2 ? top[2] : 0.0;
    return third > 0.0 ? top[1] / third : std::numeric_limits<double>::infinity();
  };
  const auto t_mom = top_persistence(mom, 1, 3), t_dtm = top_persistence(dtm, 1, 3), t_plain = top_persistence(plain, 1, 3);
  json summary{{"n", n},
               {"outliers", m},
               {"q", q},
               {"dtm_k", q},
               {"top_h1_persistence_mom", t_mom},
               {"top_h1_persistence_dtm", t_dtm},
               {"top_h1_persistence_plain", t_plain}};
  summary["second_to_third_ratio_mom"] = ratio(t_mom) == std::numeric_limits<double>::infinity() ? json("inf") : json(ratio(t_mom));
  return summary;
}

// ---------------------------------------------------------------------------

IntensityImage load_image(const std::string& ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) return digit_image(ref.substr(prefix.size()));
  return read_pgm_file(ref);
}

json run_image_recover(const Params& p, std::uint64_t seed, Artifacts& out) {
  const auto clean_img = load_image(p.str("clean_image"));
  const auto dirty_img = load_image(p.str("contaminated_image"));
  if (clean_img.width != dirty_img.width || clean_img.height != dirty_img.height)
    throw Error("experiment image_recover: images differ in size");
  const double per = p.num("points_per_unit_intensity");
  const double budget = p.num("budget_fraction");
  const auto clean = image_to_pointcloud(clean_img, per, derive_seed(seed, 0));
  const auto dirty = image_to_pointcloud(dirty_img, per, derive_seed(seed, 1));
  clean.require_nonempty();
  dirty.require_nonempty();
  const std::size_t n_clean = clean.size();
  const auto q = 1 + 2 * static_cast<std::size_t>(std::ceil(budget * static_cast<double>(n_clean) - 1e-9));
  if (q > dirty.size()) throw Error("experiment image_recover: budget gives more blocks than points");
  const PowerParam pw = p.power("p");

  const auto part = partition(dirty.size(), q, derive_seed(seed, 2), true);
  const WeightFunction f(dirty, part);
  const auto w = f.evaluate(dirty);
  const std::vector<double> zc(clean.size(), 0.0), zd(dirty.size(), 0.0);
  const auto d_clean = weighted_rips_diagram(clean, zc, pw, 2);
  const auto d_dirty = weighted_rips_diagram(dirty, zd, pw, 2);
  const auto d_mom = weighted_rips_diagram(dirty, w, pw, 2);

  const auto centers = pixel_centers(dirty_img);
  const auto rescaled = rescaled_intensity(dirty, part, centers);
  IntensityImage recovered{dirty_img.width, dirty_img.height, rescaled};

  {
    auto f1 = out.open("clean.pgm");
    write_pgm(f1, clean_img);
    auto f2 = out.open("contaminated.pgm");
    write_pgm(f2, dirty_img);
    auto f3 = out.open("recovered.pgm");
    write_pgm(f3, recovered);
  }
  out.points("points_clean.csv", clean);
  out.points("points_contaminated.csv", dirty);
  out.weights("weights_mom.csv", w);
  {
    auto r = out.open("rescaled_intensity.csv");
    r << "row,col,value\n";
    for (std::size_t i = 0; i < rescaled.size(); ++i)
      r << i / dirty_img.width << ',' << i % dirty_img.width << ',' << rescaled[i] << '\n';
  }
  out.diagram("diagram_clean", d_clean);
  out.diagram("diagram_contaminated", d_dirty);
  out.diagram("diagram_mom", d_mom);
  return json{{"n_clean", n_clean},
              {"n_contaminated", dirty.size()},
              {"q", q},
              {"top_h1_persistence_clean", top_persistence(d_clean, 1, 3)},
              {"top_h1_persistence_contaminated", top_persistence(d_dirty, 1, 3)},
              {"top_h1_persistence_mom", top_persistence(d_mom, 1, 3)}};
}

// ---------------------------------------------------------------------------

json run_influence(const Params& p, std::uint64_t seed, Artifacts& out) {
  const std::size_t n = p.count("n");
  const std::size_t q = p.count("q"), k = p.count("k");
  const std::size_t reps = p.count("replicates");
  const auto m_values = p.list("m_values");
  const bool diagrams = p.flag("compute_diagrams");
  const PowerParam pw = p.power("p");
  const BoundingBox ebox = p.box("eval_box");
  const double eres = p.num("eval_resolution");
  if (!(eres > 0.0)) throw Error("experiment influence: eval_resolution must be positive");
  PointCloud eval(2);
  for (double y = ebox.y0; y <= ebox.y1 + 1e-12; y += eres)
    for (double x = ebox.x0; x <= ebox.x1 + 1e-12; x += eres) {
      const double pt[2] = {x, y};
      eval.push_back(pt);
    }

  static constexpr const char* kMethods[3] = {"plain", "mom", "dtm"};
  struct Cell {
    std::size_t m = 0;
    double birth[3]{}, delta_b[3]{}, max_h1[3]{}, winf[3]{};
  };
  const std::size_t total = m_values.size() * reps;
  std::vector<Cell> cells(total);
  parallel_for(total, [&](std::size_t idx) {
    const std::size_t mi = idx / reps, r = idx % reps;
    const auto m = static_cast<std::size_t>(m_values[mi]);
    const std::uint64_t rs = derive_seed(derive_seed(seed, mi), r);
    const auto clean = gen_circle(n, p.num("circle_radius"), p.num("noise_sigma"), derive_seed(rs, 0));
    const auto outliers = gen_uniform_box(m, p.num("outlier_low"), p.num("outlier_high"), 2, derive_seed(rs, 1));
    PointCloud dirty = clean;
    dirty.append(outliers);
    const std::uint64_t part_seed = derive_seed(rs, 2);
    const WeightFunction plain_c(clean, weight::PlainDistance{}), plain_d(dirty, weight::PlainDistance{});
    const WeightFunction mom_c(clean, weight::MomDist{q, part_seed, true}), mom_d(dirty, weight::MomDist{q, part_seed, true});
    const WeightFunction dtm_c(clean, weight::Dtm{k, false}), dtm_d(dirty, weight::Dtm{k, false});
    const WeightFunction* cl[3] = {&plain_c, &mom_c, &dtm_c};
    const WeightFunction* co[3] = {&plain_d, &mom_d, &dtm_d};
    Cell& cell = cells[idx];
    cell.m = m;
    for (int a = 0; a < 3; ++a) {
      if (m > 0) {
        cell.birth[a] = (*co[a])(outliers[0]);
        // Measured against the clean distance function d_n in every method.
        cell.delta_b[a] = birth_influence(plain_c, *co[a], outliers[0]);
      }
      cell.winf[a] = winf_influence(*cl[a], *co[a], eval);
      if (diagrams) {
        const auto w = a == 0 ? std::vector<double>(dirty.size(), 0.0) : co[a]->evaluate(dirty);
        cell.max_h1[a] = max_persistence(weighted_rips_diagram(dirty, w, pw, 2), 1);
      }
    }
  });

  auto raw = out.open("influence_replicates.csv");
  raw << "m,replicate,method,birth,delta_b,max_h1_persistence,winf_influence\n";
  std::map<std::size_t, std::array<std::array<std::vector<double>, 4>, 3>> agg;
  bool dominated = true;
  std::size_t checked = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto& c = cells[idx];
    for (int a = 0; a < 3; ++a) {
      raw << c.m << ',' << idx % reps << ',' << kMethods[a] << ',' << c.birth[a] << ',' << c.delta_b[a] << ','
          << c.max_h1[a] << ',' << c.winf[a] << '\n';
      auto& slot = agg[c.m][a];
      slot[0].push_back(c.birth[a]);
      slot[1].push_back(c.delta_b[a]);
      slot[2].push_back(c.max_h1[a]);
      slot[3].push_back(c.winf[a]);
    }
    if (c.m > 0 && 2 * c.m < q) {
      ++checked;
      dominated = dominated && c.delta_b[1] <= c.delta_b[0];
    }
  }
  auto curves = out.open("influence_curves.csv");
  curves << "m,method,mean_birth,mean_delta_b,mean_max_h1_persistence,mean_winf_influence\n";
  std::vector<double> low, high;
  for (const auto& [m, per] : agg) {
    for (int a = 0; a < 3; ++a)
      curves << m << ',' << kMethods[a] << ',' << mean(per[a][0]) << ',' << mean(per[a][1]) << ',' << mean(per[a][2])
             << ',' << mean(per[a][3]) << '\n';
    const double db = mean(per[1][1]);
    if (m <= q / 2) low.push_back(db);
    if (m >= 80) high.push_back(db);
  }
  return json{{"q", q},
              {"k", k},
              {"domination_checked", checked},
              {"domination_holds", dominated},
              {"mean_delta_b_mom_small_m", mean(low)},
              {"mean_delta_b_mom_large_m", mean(high)},
              {"eval_points", eval.size()}};
}

json notes_for(const std::string& name, const json& params) {
  auto notes = json::array();
  if (name == "image_recover")
    notes.push_back("rescaled intensity maximum taken over the pixel centres of the contaminated image");
  if (name == "influence") {
    notes.push_back("delta_b for every method is measured against the clean distance function d_n at the first outlier");
    notes.push_back("winf_influence compares each method with its own clean counterpart on the eval_box grid");
  }
  if (params.contains("q") && params["q"] == 0) notes.push_back("q = 0 selects Q by Lepski's method");
  return notes;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"adaptive_q", "sublevel_compare", "highdim", "image_recover", "influence"};
}

json default_parameters(const std::string& name) {
  const json circle{{"circle_radius", 1.0},
                    {"noise_sigma", 0.01},
                    {"matern_window", {-3.0, -3.0, 3.0, 3.0}},
                    {"matern_offspring", 10.0},
                    {"matern_radius", 0.3}};
  const json lepski{{"m_min", 20}, {"m_max", 200}, {"theta", 1.07}, {"delta", 0.05},
                    {"a", 1e6},    {"b", 2.0},     {"lepski_dim", "all"}};
  json j;
  if (name == "adaptive_q") {
    j = {{"n", 500},
         {"replicates", 30},
         {"m_low", 50},
         {"m_high", 150},
         {"p", 1.0},
         {"run_heuristic", true},
         {"heuristic_replicates", 50},
         {"heuristic_dim", 1},
         {"heuristic_q_grid", json::array()}};
    for (int q = 21; q <= 401; q += 20) j["heuristic_q_grid"].push_back(q);
    j.update(circle);
    j.update(lepski);
  } else if (name == "sublevel_compare") {
    j = {{"n_inliers", 500}, {"m", 50}, {"p", 1.0}, {"q", 0}, {"grid_resolution", 0.5}, {"grid_box", "auto"}};
    j.update(circle);
    j.update(lepski);
  } else if (name == "highdim") {
    j = {{"n_per_circle", 200},
         {"ambient_dim", 100},
         {"outlier_fraction", 0.125},
         {"outlier_low", -0.2},
         {"outlier_high", 0.2},
         {"p", 1.0},
         {"m_min", 10},
         {"m_max", 100},
         {"theta", 1.1},
         {"delta", 0.05},
         {"a", 1e6},
         {"b", 2.0},
         {"lepski_dim", 1}};
  } else if (name == "image_recover") {
    j = {{"clean_image", "builtin:six"},
         {"contaminated_image", "builtin:eight"},
         {"points_per_unit_intensity", 10.0},
         {"budget_fraction", 0.10},
         {"p", 1.0}};
  } else if (name == "influence") {
    j = {{"n", 500},
         {"circle_radius", 1.0},
         {"noise_sigma", 0.0},
         {"outlier_low", -0.1},
         {"outlier_high", 0.1},
         {"q", 100},
         {"k", 50},
         {"m_values", {10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120}},
         {"replicates", 10},
         {"p", 1.0},
         {"compute_diagrams", true},
         {"eval_box", {-1.5, -1.5, 1.5, 1.5}},
         {"eval_resolution", 0.05}};
  } else {
    throw Error("unknown experiment '" + name + "'");
  }
  return j;
}

ExperimentSpec spec_from_json(const json& j, bool fill_defaults) {
  if (!j.is_object() || !j.contains("name")) throw Error("experiment spec needs a \"name\"");
  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.output_dir = j.value("output_dir", std::string("experiment_out"));
  json params = fill_defaults ? default_parameters(spec.name) : json::object();
  if (j.contains("parameters")) params.update(j.at("parameters"));
  spec.parameters = params;
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  const Params p(spec.name, spec.parameters);
  Artifacts out(spec.output_dir);
  json summary;
  if (spec.name == "adaptive_q") summary = run_adaptive_q(p, spec.seed, out);
  else if (spec.name == "sublevel_compare") summary = run_sublevel_compare(p, spec.seed, out);
  else if (spec.name == "highdim") summary = run_highdim(p, spec.seed, out);
  else if (spec.name == "image_recover") summary = run_image_recover(p, spec.seed, out);
  else if (spec.name == "influence") summary = run_influence(p, spec.seed, out);
  else throw Error("unknown experiment '" + spec.name + "'");

  ExperimentResult res;
  res.files = out.files();
  json manifest{{"experiment", spec.name},
                {"seed", spec.seed},
                {"software_version", MOMDIST_VERSION},
                {"parameters", spec.parameters},
                {"files", res.files},
                {"notes", notes_for(spec.name, spec.parameters)},
                {"summary", summary}};
  std::ofstream mf(out.root() / "manifest.json", std::ios::binary);
  if (!mf) throw Error("cannot write manifest.json");
  mf << manifest.dump(2) << '\n';
  res.files.push_back("manifest.json");
  res.summary = std::move(summary);
  return res;
}

}  // namespace momdist
