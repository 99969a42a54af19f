#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "momdist/diagram_metrics.hpp"
#include "momdist/distance.hpp"
#include "momdist/experiments.hpp"
#include "momdist/generators.hpp"
#include "momdist/persistence.hpp"
#include "momdist/radii.hpp"
#include "momdist/selection.hpp"
#include "momdist/sublevel_grid.hpp"
#include "momdist/weighted_rips.hpp"

namespace py = pybind11;
using namespace momdist;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& a) {
  if (a.ndim() != 2) throw Error("expected a 2-D array of points");
  const auto n = static_cast<std::size_t>(a.shape(0)), d = static_cast<std::size_t>(a.shape(1));
  return PointCloud(d, std::vector<double>(a.data(), a.data() + n * d));
}

Array from_cloud(const PointCloud& c) {
  Array out({c.size(), c.dim()});
  std::copy(c.coords().begin(), c.coords().end(), out.mutable_data());
  return out;
}

Array from_vector(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// Diagrams cross the boundary as (k, 3) arrays of rows (dim, birth, death).
Array from_diagram(const PersistenceDiagram& d) {
  Array out({d.pairs.size(), std::size_t{3}});
  auto r = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    r(i, 0) = d.pairs[i].dim;
    r(i, 1) = d.pairs[i].birth;
    r(i, 2) = d.pairs[i].death;
  }
  return out;
}

PersistenceDiagram to_diagram(const Array& a) {
  if (a.ndim() != 2 || (a.shape(0) > 0 && a.shape(1) != 3)) throw Error("expected a (k, 3) diagram array");
  PersistenceDiagram d;
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) d.pairs.push_back({static_cast<int>(r(i, 0)), r(i, 1), r(i, 2)});
  return d;
}

int parse_dim(const py::object& dim) {
  if (py::isinstance<py::str>(dim)) {
    if (dim.cast<std::string>() == "all") return kAllDims;
    throw Error("dim must be an integer or 'all'");
  }
  return dim.cast<int>();
}

WeightKind weight_kind(const std::string& name, std::size_t q, std::size_t k, std::uint64_t seed, bool shuffle) {
  if (name == "mom") return weight::MomDist{q, seed, shuffle};
  if (name == "plain") return weight::PlainDistance{};
  if (name == "dtm") return weight::Dtm{k, false};
  if (name == "zero") return weight::Zero{};
  throw Error("unknown weight '" + name + "'");
}

PowerParam power(const py::object& p) {
  if (py::isinstance<py::str>(p)) return PowerParam::parse(p.cast<std::string>());
  return PowerParam::finite(p.cast<double>());
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Median-of-means distance weighted persistence";
  m.attr("__version__") = MOMDIST_VERSION;
  py::register_exception<Error>(m, "MomdistError", PyExc_ValueError);

  m.def(
      "momdist",
      [](const Array& points, const Array& queries, std::size_t num_blocks, std::uint64_t seed, bool shuffle) {
        const auto cloud = to_cloud(points);
        const WeightFunction f(cloud, weight::MomDist{num_blocks, seed, shuffle});
        return from_vector(f.evaluate(to_cloud(queries)));
      },
      py::arg("points"), py::arg("queries"), py::arg("num_blocks"), py::arg("seed") = 0, py::arg("shuffle") = true);

  m.def(
      "weights",
      [](const Array& points, const Array& queries, const std::string& kind, std::size_t num_blocks, std::size_t k,
         std::uint64_t seed) {
        return from_vector(eval_weights(to_cloud(points), weight_kind(kind, num_blocks, k, seed, true), to_cloud(queries)));
      },
      py::arg("points"), py::arg("queries"), py::arg("kind") = "mom", py::arg("num_blocks") = 1, py::arg("k") = 1,
      py::arg("seed") = 0);

  m.def(
      "weighted_rips_diagram",
      [](const Array& points, const Array& weights, const py::object& p, std::size_t max_dim) {
        const auto cloud = to_cloud(points);
        if (weights.ndim() != 1) throw Error("weights must be 1-D");
        const std::vector<double> w(weights.data(), weights.data() + weights.shape(0));
        return from_diagram(weighted_rips_diagram(cloud, w, power(p), max_dim));
      },
      py::arg("points"), py::arg("weights"), py::arg("p") = 1.0, py::arg("max_dim") = 2);

  m.def(
      "momdist_diagram",
      [](const Array& points, std::size_t num_blocks, const std::string& pipeline, const py::object& p,
         std::uint64_t seed, double resolution) {
        DiagramSettings s;
        s.p = power(p);
        s.partition_seed = seed;
        s.grid_resolution = resolution;
        const auto pl = pipeline == "sublevel" ? Pipeline::Sublevel : Pipeline::Weighted;
        if (pipeline != "sublevel" && pipeline != "weighted") throw Error("pipeline must be 'weighted' or 'sublevel'");
        return from_diagram(momdist_diagram(to_cloud(points), num_blocks, pl, s));
      },
      py::arg("points"), py::arg("num_blocks"), py::arg("pipeline") = "weighted", py::arg("p") = 1.0,
      py::arg("seed") = 0, py::arg("resolution") = 0.5);

  m.def(
      "bottleneck",
      [](const Array& a, const Array& b, const py::object& dim) {
        return bottleneck_distance(to_diagram(a), to_diagram(b), parse_dim(dim));
      },
      py::arg("a"), py::arg("b"), py::arg("dim") = "all");

  m.def(
      "select_q",
      [](const Array& points, std::size_t m_min, std::size_t m_max, double theta, double delta, double a, double b,
         const py::object& dim, std::uint64_t seed) {
        LepskiConfig c;
        c.m_min = m_min;
        c.m_max = m_max;
        c.theta = theta;
        c.delta = delta;
        c.ab = {a, b};
        c.dim = parse_dim(dim);
        DiagramSettings s;
        s.partition_seed = seed;
        return to_python(trace_to_json(lepski_select(to_cloud(points), c, Pipeline::Weighted, s)));
      },
      py::arg("points"), py::arg("m_min"), py::arg("m_max"), py::arg("theta") = 1.5, py::arg("delta") = 0.05,
      py::arg("a") = 1.0, py::arg("b") = 2.0, py::arg("dim") = "all", py::arg("seed") = 0);

  m.def("lambert_w0", &lambert_w0, py::arg("z"));
  m.def(
      "radius_h",
      [](double n, double mm, double delta, double m_max, double a, double b) {
        return radius_h(n, mm, delta, m_max, {a, b});
      },
      py::arg("n"), py::arg("m"), py::arg("delta"), py::arg("m_max"), py::arg("a"), py::arg("b"));
  m.def(
      "radius_p", [](double n, double mm, double delta, double a, double b) { return radius_p(n, mm, delta, {a, b}); },
      py::arg("n"), py::arg("m"), py::arg("delta"), py::arg("a"), py::arg("b"));

  m.def(
      "gen_circle", [](std::size_t n, double radius, double sigma, std::uint64_t seed) {
        return from_cloud(gen_circle(n, radius, sigma, seed));
      },
      py::arg("n"), py::arg("radius") = 1.0, py::arg("sigma") = 0.0, py::arg("seed") = 0);
  m.def(
      "gen_matern",
      [](std::size_t count, std::array<double, 4> window, double offspring, double radius, std::uint64_t seed) {
        return from_cloud(gen_matern_exact(count, {window[0], window[1], window[2], window[3]}, offspring, radius, seed));
      },
      py::arg("count"), py::arg("window") = std::array<double, 4>{-3.0, -3.0, 3.0, 3.0}, py::arg("offspring") = 10.0,
      py::arg("radius") = 0.3, py::arg("seed") = 0);

  m.def("experiment_names", &experiment_names);
  m.def(
      "default_parameters", [](const std::string& name) { return to_python(default_parameters(name)); },
      py::arg("name"));
  m.def(
      "run_experiment",
      [](const std::string& name, const py::object& overrides, std::uint64_t seed, const std::string& output_dir) {
        nlohmann::json j{{"name", name}, {"seed", seed}, {"output_dir", output_dir}};
        j["parameters"] = overrides.is_none() ? nlohmann::json::object() : from_python(overrides);
        const auto res = run_experiment(spec_from_json(j));
        return py::make_tuple(to_python(res.summary), res.files);
      },
      py::arg("name"), py::arg("parameters") = py::none(), py::arg("seed") = 0, py::arg("output_dir"));
}
