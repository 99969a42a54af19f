// Command-line front end: diagram, bottleneck, select-q, experiment, gen.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "momdist/diagram_io.hpp"
#include "momdist/diagram_metrics.hpp"
#include "momdist/experiments.hpp"
#include "momdist/generators.hpp"
#include "momdist/rng.hpp"
#include "momdist/selection.hpp"

using namespace momdist;
using nlohmann::json;

namespace {

// Writes to the named file, or stdout for "" or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

BoundingBox parse_bbox(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
  if (v.size() != 4) throw Error("--bbox expects x0,y0,x1,y1");
  return {v[0], v[1], v[2], v[3]};
}

int parse_dim(const std::string& text) {
  if (text == "all") return kAllDims;
  return std::stoi(text);
}

void emit_diagram(const PersistenceDiagram& d, const std::string& format, const std::string& path) {
  Output out(path);
  if (format == "csv") {
    out.stream().precision(17);
    write_diagram_csv(out.stream(), d);
  } else {
    out.stream() << diagram_to_json(d).dump(1) << '\n';
  }
}

struct DiagramArgs {
  std::string input, weight = "mom", p = "1", format = "json", output, weights_out, complex_out, grid_out, bbox;
  std::size_t q = 1, k = 1, max_dim = 2;
  std::uint64_t seed = 0;
  std::optional<double> t_max;
  double resolution = 0.5;
  bool header = false, dtm_knn = false, keep_zero = false, no_shuffle = false, sublevel = false;
};

void run_diagram(const DiagramArgs& a) {
  const auto cloud = read_csv_file(a.input, a.header);
  cloud.require_nonempty();
  WeightKind kind;
  if (a.weight == "mom") kind = weight::MomDist{a.q, a.seed, !a.no_shuffle};
  else if (a.weight == "plain") kind = weight::PlainDistance{};
  else if (a.weight == "dtm") kind = weight::Dtm{a.k, a.dtm_knn};
  else if (a.weight == "zero") kind = weight::Zero{};
  else throw Error("unknown weight '" + a.weight + "'");
  const PowerParam p = PowerParam::parse(a.p);
  const WeightFunction f(cloud, kind);
  const auto w = f.evaluate(cloud);
  if (!a.weights_out.empty()) {
    Output wo(a.weights_out);
    wo.stream().precision(17);
    wo.stream() << "index,weight\n";
    for (std::size_t i = 0; i < w.size(); ++i) wo.stream() << i << ',' << w[i] << '\n';
  }
  PersistenceDiagram d;
  if (a.sublevel) {
    const BoundingBox box = a.bbox.empty() ? padded_bounds(cloud, *std::max_element(w.begin(), w.end())) : parse_bbox(a.bbox);
    const auto grid = sample_grid(f, box, a.resolution);
    if (!a.grid_out.empty()) {
      Output go(a.grid_out);
      go.stream().precision(17);
      write_grid_csv(go.stream(), grid);
    }
    d = lower_star_diagram(grid, a.keep_zero);
  } else {
    if (!a.complex_out.empty()) {
      Output co(a.complex_out);
      co.stream().precision(17);
      write_complex_csv(co.stream(), build_weighted_rips(cloud, w, p, a.max_dim, a.t_max.value_or(default_t_max(cloud, w))));
    }
    d = weighted_rips_diagram(cloud, w, p, a.max_dim, a.t_max, a.keep_zero);
  }
  d.source = describe(kind) + " " + (a.sublevel ? "sublevel grid" : "weighted rips p=" + p.str());
  emit_diagram(d, a.format, a.output);
}

struct BottleneckArgs {
  std::string a, b, dim = "all", matching;
  double tol = 1e-9;
};

void run_bottleneck(const BottleneckArgs& args) {
  const auto da = read_diagram_file(args.a);
  const auto db = read_diagram_file(args.b);
  const auto r = bottleneck(da, db, parse_dim(args.dim), args.tol, !args.matching.empty());
  std::cout.precision(17);
  std::cout << r.distance << '\n';
  if (!args.matching.empty()) {
    auto arr = json::array();
    for (const auto& [i, j] : *r.matching) {
      json row;
      row["a"] = i == kDiagonal ? json("diagonal") : json(i);
      row["b"] = j == kDiagonal ? json("diagonal") : json(j);
      arr.push_back(row);
    }
    Output mo(args.matching);
    mo.stream() << json{{"distance", r.distance}, {"matching", arr}}.dump(1) << '\n';
  }
}

struct SelectArgs {
  std::string input, method = "lepski", pipeline = "weighted", p = "1", output, dim = "all";
  std::size_t m_min = 1, m_max = 1, replicates = 10, max_dim = 2;
  double theta = 1.5, delta = 0.05, a = 1.0, c = 2.0, resolution = 0.5;
  std::optional<double> b;
  std::vector<std::size_t> q_grid;
  std::uint64_t seed = 0;
  bool header = false, no_shuffle = false;
};

void run_select(const SelectArgs& s) {
  const auto cloud = read_csv_file(s.input, s.header);
  cloud.require_nonempty();
  DiagramSettings settings;
  settings.p = PowerParam::parse(s.p);
  settings.max_dim = s.max_dim;
  settings.partition_seed = s.seed;
  settings.shuffle = !s.no_shuffle;
  settings.grid_resolution = s.resolution;
  SelectionTrace trace;
  json extra;
  if (s.method == "lepski") {
    LepskiConfig cfg;
    cfg.m_min = s.m_min;
    cfg.m_max = s.m_max;
    cfg.theta = s.theta;
    cfg.delta = s.delta;
    cfg.ab = {s.a, s.b.value_or(static_cast<double>(cloud.dim()))};
    cfg.dim = parse_dim(s.dim);
    const Pipeline pl = s.pipeline == "sublevel" ? Pipeline::Sublevel : Pipeline::Weighted;
    if (s.pipeline != "weighted" && s.pipeline != "sublevel") throw Error("unknown pipeline '" + s.pipeline + "'");
    trace = lepski_select(cloud, cfg, pl, settings);
    extra["standard_condition"] = {{"a", cfg.ab.a}, {"b", cfg.ab.b}};
  } else if (s.method == "resample") {
    HeuristicConfig cfg;
    cfg.q_grid = s.q_grid;
    if (cfg.q_grid.empty())
      for (std::size_t q = 1; q <= cloud.size(); q += std::max<std::size_t>(1, cloud.size() / 20)) cfg.q_grid.push_back(q);
    cfg.replicates = s.replicates;
    cfg.seed = s.seed;
    cfg.dim = parse_dim(s.dim);
    trace = heuristic_q(cloud, cfg, settings);
    const auto [lo, hi] = derive_bounds_from_heuristic(std::max<std::size_t>(1, trace.chosen_q), s.c);
    extra["derived_bounds"] = {{"C", s.c}, {"m_min", lo}, {"m_max", hi}};
  } else {
    throw Error("unknown method '" + s.method + "'");
  }
  auto j = trace_to_json(trace);
  j.update(extra);
  Output out(s.output);
  out.stream() << j.dump(2) << '\n';
}

struct ExperimentArgs {
  std::string name, spec_file, out_dir = "experiment_out", image, clean_image;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  bool print_defaults = false;
};

void run_experiment_cmd(const ExperimentArgs& e) {
  if (e.print_defaults) {
    std::cout << default_parameters(e.name).dump(2) << '\n';
    return;
  }
  json j{{"name", e.name}, {"output_dir", e.out_dir}};
  if (!e.spec_file.empty()) {
    std::ifstream in(e.spec_file);
    if (!in) throw Error("cannot open " + e.spec_file);
    json file = json::parse(in);
    j.update(file);
    if (!file.contains("name")) j["name"] = e.name;
  }
  auto spec = spec_from_json(j);
  if (!e.name.empty() && spec.name != e.name) throw Error("spec file names experiment '" + spec.name + "'");
  if (e.seed) spec.seed = *e.seed;
  for (const auto& kv : e.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;
    }
    spec.parameters[key] = parsed;
  }
  if (!e.image.empty()) spec.parameters["contaminated_image"] = e.image;
  if (!e.clean_image.empty()) spec.parameters["clean_image"] = e.clean_image;
  const auto res = run_experiment(spec);
  std::cout << json{{"output_dir", spec.output_dir.string()}, {"summary", res.summary}}.dump(2) << '\n';
}

struct GenArgs {
  std::string output, name = "six", image, window = "-3,-3,3,3";
  std::size_t n = 100, dim = 2;
  double radius = 1.0, sigma = 0.0, low = -1.0, high = 1.0, intensity = 1.0, offspring = 10.0, cluster_radius = 0.3,
         density = 10.0;
  std::optional<std::size_t> exact;
  std::size_t embed = 0;
  std::uint64_t seed = 0;
};

void write_cloud(const PointCloud& c, const std::string& path) {
  Output out(path);
  write_csv(out.stream(), c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Median-of-means distance filtrations for robust persistent homology"};
  app.set_version_flag("--version", std::string(MOMDIST_VERSION));
  app.require_subcommand(1);

  DiagramArgs da;
  auto* diagram = app.add_subcommand("diagram", "Persistence diagram of a point cloud");
  diagram->add_option("points", da.input, "Point cloud CSV")->required();
  diagram->add_option("--weight", da.weight, "mom | plain | dtm | zero")->capture_default_str();
  diagram->add_option("--q", da.q, "Number of MoM blocks")->capture_default_str();
  diagram->add_option("--k", da.k, "DTM neighbour count")->capture_default_str();
  diagram->add_flag("--dtm-knn", da.dtm_knn, "DTM as the k-th neighbour distance");
  diagram->add_option("--seed", da.seed, "Block partition seed")->capture_default_str();
  diagram->add_flag("--no-shuffle", da.no_shuffle, "Assign blocks in input order");
  diagram->add_option("--p", da.p, "1 | 2 | inf | <real >= 1>")->capture_default_str();
  diagram->add_option("--max-dim", da.max_dim, "Top simplex dimension (1 or 2)")->capture_default_str()->check(CLI::Range(1, 2));
  diagram->add_option("--t-max", da.t_max, "Filtration cutoff");
  diagram->add_flag("--keep-zero", da.keep_zero, "Keep zero-length pairs");
  diagram->add_flag("--header", da.header, "Skip one header line");
  diagram->add_option("--format", da.format, "json | csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  diagram->add_option("-o,--output", da.output, "Diagram file (default stdout)");
  diagram->add_option("--weights-out", da.weights_out, "Write index,weight CSV");
  diagram->add_option("--complex-out", da.complex_out, "Write the filtered complex as CSV");
  diagram->add_flag("--sublevel", da.sublevel, "Lower-star diagram of the weight function on a 2-D grid");
  diagram->add_option("--bbox", da.bbox, "Grid box x0,y0,x1,y1");
  diagram->add_option("--resolution", da.resolution, "Grid spacing")->capture_default_str();
  diagram->add_option("--grid-out", da.grid_out, "Write the sampled grid as a CSV matrix");

  BottleneckArgs ba;
  auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between two diagrams");
  bn->add_option("a", ba.a, "Diagram (.json or .csv)")->required();
  bn->add_option("b", ba.b, "Diagram (.json or .csv)")->required();
  bn->add_option("--dim", ba.dim, "Homological dimension or 'all'")->capture_default_str();
  bn->add_option("--tol", ba.tol, "Tolerance")->capture_default_str();
  bn->add_option("--matching", ba.matching, "Write the optimal matching as JSON");

  SelectArgs sa;
  auto* sel = app.add_subcommand("select-q", "Choose the number of blocks");
  sel->add_option("points", sa.input, "Point cloud CSV")->required();
  sel->add_option("--method", sa.method, "lepski | resample")->capture_default_str()->check(CLI::IsMember({"lepski", "resample"}));
  sel->add_option("--pipeline", sa.pipeline, "weighted | sublevel")->capture_default_str();
  sel->add_option("--m-min", sa.m_min)->capture_default_str();
  sel->add_option("--m-max", sa.m_max)->capture_default_str();
  sel->add_option("--theta", sa.theta)->capture_default_str();
  sel->add_option("--delta", sa.delta)->capture_default_str();
  sel->add_option("--a", sa.a, "Standard condition constant a")->capture_default_str();
  sel->add_option("--b", sa.b, "Standard condition exponent b (default: ambient dimension)");
  sel->add_option("--replicates", sa.replicates, "Permutations per Q for the resampling heuristic")->capture_default_str();
  sel->add_option("--q-grid", sa.q_grid, "Block counts for the resampling heuristic")->delimiter(',');
  sel->add_option("--C", sa.c, "Bound factor for m_min, m_max derived from the heuristic")->capture_default_str();
  sel->add_option("--seed", sa.seed)->capture_default_str();
  sel->add_flag("--no-shuffle", sa.no_shuffle);
  sel->add_option("--dim", sa.dim, "Diagram dimension compared, or 'all'")->capture_default_str();
  sel->add_option("--p", sa.p)->capture_default_str();
  sel->add_option("--max-dim", sa.max_dim)->capture_default_str()->check(CLI::Range(1, 2));
  sel->add_option("--resolution", sa.resolution, "Grid spacing for the sublevel pipeline")->capture_default_str();
  sel->add_flag("--header", sa.header);
  sel->add_option("-o,--output", sa.output, "Trace file (default stdout)");

  ExperimentArgs ea;
  auto* ex = app.add_subcommand("experiment", "Run a scripted experiment");
  ex->add_option("name", ea.name, "adaptive_q | sublevel_compare | highdim | image_recover | influence")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  ex->add_option("--spec", ea.spec_file, "JSON spec; its parameters override the defaults");
  ex->add_option("--set", ea.sets, "Override one parameter: key=value (value parsed as JSON when possible)");
  ex->add_option("--seed", ea.seed);
  ex->add_option("--out", ea.out_dir, "Output directory")->capture_default_str();
  ex->add_option("--image", ea.image, "Contaminated PGM image (image_recover)");
  ex->add_option("--clean-image", ea.clean_image, "Clean PGM image (image_recover)");
  ex->add_flag("--print-defaults", ea.print_defaults, "Print the default parameters and exit");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Synthetic data");
  gen->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", ga.seed)->capture_default_str();
    c->add_option("-o,--output", ga.output, "Output file (default stdout)");
  };
  auto* g_circle = gen->add_subcommand("circle", "Noisy circle");
  g_circle->add_option("--n", ga.n)->capture_default_str();
  g_circle->add_option("--radius", ga.radius)->capture_default_str();
  g_circle->add_option("--sigma", ga.sigma)->capture_default_str();
  common(g_circle);
  auto* g_matern = gen->add_subcommand("matern", "Matern cluster process");
  g_matern->add_option("--window", ga.window, "x0,y0,x1,y1")->capture_default_str();
  g_matern->add_option("--intensity", ga.intensity, "Parent intensity")->capture_default_str();
  g_matern->add_option("--offspring", ga.offspring)->capture_default_str();
  g_matern->add_option("--cluster-radius", ga.cluster_radius)->capture_default_str();
  g_matern->add_option("--exact", ga.exact, "Draw exactly this many points");
  common(g_matern);
  auto* g_uniform = gen->add_subcommand("uniform", "Uniform points in a cube");
  g_uniform->add_option("--n", ga.n)->capture_default_str();
  g_uniform->add_option("--dim", ga.dim)->capture_default_str();
  g_uniform->add_option("--low", ga.low)->capture_default_str();
  g_uniform->add_option("--high", ga.high)->capture_default_str();
  common(g_uniform);
  auto* g_links = gen->add_subcommand("interlocked", "Two linked circles in R^3");
  g_links->add_option("--n", ga.n, "Points per circle")->capture_default_str();
  g_links->add_option("--embed", ga.embed, "Rotate into R^d (0 = stay in R^3)")->capture_default_str();
  common(g_links);
  auto* g_image = gen->add_subcommand("image", "Built-in digit image as PGM");
  g_image->add_option("--name", ga.name, "six | eight")->capture_default_str();
  g_image->add_option("-o,--output", ga.output, "Output file (default stdout)");
  auto* g_ipts = gen->add_subcommand("image-points", "Point cloud sampled from a PGM image");
  g_ipts->add_option("--image", ga.image, "PGM file, or builtin:six / builtin:eight")->required();
  g_ipts->add_option("--density", ga.density, "Points per unit intensity")->capture_default_str();
  common(g_ipts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*diagram) run_diagram(da);
    else if (*bn) run_bottleneck(ba);
    else if (*sel) run_select(sa);
    else if (*ex) run_experiment_cmd(ea);
    else if (*g_circle) write_cloud(gen_circle(ga.n, ga.radius, ga.sigma, ga.seed), ga.output);
    else if (*g_matern) {
      const auto w = parse_bbox(ga.window);
      write_cloud(ga.exact ? gen_matern_exact(*ga.exact, w, ga.offspring, ga.cluster_radius, ga.seed)
                           : gen_matern_cluster(w, ga.intensity, ga.offspring, ga.cluster_radius, ga.seed),
                  ga.output);
    } else if (*g_uniform) write_cloud(gen_uniform_box(ga.n, ga.low, ga.high, ga.dim, ga.seed), ga.output);
    else if (*g_links) {
      auto c = gen_interlocked_circles(ga.n, ga.seed);
      if (ga.embed > 0) c = embed_rotated(c, random_rotation(ga.embed, derive_seed(ga.seed, 1)));
      write_cloud(c, ga.output);
    } else if (*g_image) {
      Output out(ga.output);
      write_pgm(out.stream(), digit_image(ga.name));
    } else if (*g_ipts) {
      const std::string prefix = "builtin:";
      const auto img = ga.image.rfind(prefix, 0) == 0 ? digit_image(ga.image.substr(prefix.size())) : read_pgm_file(ga.image);
      write_cloud(image_to_pointcloud(img, ga.density, ga.seed), ga.output);
    }
  } catch (const std::exception& e) {
    std::cerr << "momdist: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
