#include "momdist/weighted_rips.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <tuple>

namespace momdist {

PowerParam PowerParam::finite(double p) {
  if (!(p >= 1.0)) throw Error("power p must be >= 1");
  return PowerParam(p);
}

PowerParam PowerParam::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error("invalid power '" + text + "'");
  }
  if (used != text.size()) throw Error("invalid power '" + text + "'");
  if (std::isinf(p)) return infinity();
  return finite(p);
}

std::string PowerParam::str() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

double weighted_radius(double w, double t, PowerParam p) {
  if (t < w) return -std::numeric_limits<double>::infinity();
  if (p.is_infinite()) return t;
  if (p.value() == 1.0) return t - w;
  if (w == 0.0) return t;
  return std::pow(std::pow(t, p.value()) - std::pow(w, p.value()), 1.0 / p.value());
}

double edge_time_bisect(double wx, double wy, double dist, PowerParam p, double tol) {
  if (!(tol > 0.0)) throw Error("bisection tolerance must be positive");
  double lo = std::max(wx, wy);
  auto covered = [&](double t) { return weighted_radius(wx, t, p) + weighted_radius(wy, t, p) >= dist; };
  if (covered(lo)) return lo;
  double hi = lo + dist;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (covered(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double edge_time(double wx, double wy, double dist, PowerParam p, double tol) {
  if (!(tol > 0.0)) throw Error("bisection tolerance must be positive");
  if (p.is_infinite()) return std::max({0.5 * dist, wx, wy});
  if (p.value() == 1.0) {
    if (dist <= std::abs(wx - wy)) return std::max(wx, wy);
    return 0.5 * (dist + wx + wy);
  }
  return edge_time_bisect(wx, wy, dist, p, tol);
}

void sort_filtration(std::vector<Simplex>& simplices) {
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
}

namespace {

void check_weights(const PointCloud& cloud, std::span<const double> weights) {
  if (weights.size() != cloud.size()) throw Error("weights do not align with the cloud");
  for (double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) throw Error("weights must be finite and nonnegative");
  }
}

}  // namespace

std::vector<double> edge_time_matrix(const PointCloud& cloud, std::span<const double> weights,
                                     PowerParam p, double t_max, double tol) {
  check_weights(cloud, weights);
  const std::size_t n = cloud.size();
  std::vector<double> m(n * n);
  const double inf = std::numeric_limits<double>::infinity();
  parallel_for(n, [&](std::size_t i) {
    m[i * n + i] = weights[i] <= t_max ? vertex_time(weights[i]) : inf;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double t = edge_time(weights[i], weights[j], euclidean_distance(cloud[i], cloud[j]), p, tol);
      m[i * n + j] = t <= t_max ? t : inf;
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m[i * n + j] = m[j * n + i];
  return m;
}

double enclosing_time(std::span<const double> edge_times, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, edge_times[i * n + j]);
    best = std::min(best, worst);
  }
  return best;
}

double default_t_max(const PointCloud& cloud, std::span<const double> weights) {
  double diam2 = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j)
      diam2 = std::max(diam2, squared_distance(cloud[i], cloud[j]));
  double wmax = 0.0;
  for (double w : weights) wmax = std::max(wmax, w);
  const double t = std::sqrt(diam2) + wmax;
  return t > 0.0 ? t : 1.0;
}

FilteredComplex build_weighted_rips(const PointCloud& cloud, std::span<const double> weights,
                                    PowerParam p, std::size_t max_dim, std::optional<double> t_max,
                                    double tol) {
  cloud.require_nonempty();
  check_weights(cloud, weights);
  if (max_dim > 2) throw Error("dimension cap: max_dim must be 1 or 2");
  if (max_dim < 1) throw Error("max_dim must be 1 or 2");
  const double cap = t_max ? *t_max : default_t_max(cloud, weights);
  if (!(cap > 0.0)) throw Error("t_max must be positive");

  const std::size_t n = cloud.size();
  const auto times = edge_time_matrix(cloud, weights, p, cap, tol);
  const double inf = std::numeric_limits<double>::infinity();

  FilteredComplex out;
  out.max_dim = max_dim;
  out.t_max = cap;
  auto& s = out.simplices;
  for (std::size_t i = 0; i < n; ++i) {
    if (times[i * n + i] != inf) s.push_back({{static_cast<Index>(i)}, times[i * n + i]});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (times[i * n + j] != inf) s.push_back({{static_cast<Index>(i), static_cast<Index>(j)}, times[i * n + j]});
  if (max_dim >= 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double ij = times[i * n + j];
        if (ij == inf) continue;
        for (std::size_t k = j + 1; k < n; ++k) {
          const double v = std::max({ij, times[i * n + k], times[j * n + k]});
          if (v != inf)
            s.push_back({{static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k)}, v});
        }
      }
  }
  sort_filtration(s);
  return out;
}

void write_complex_csv(std::ostream& out, const FilteredComplex& complex) {
  const auto old = out.precision(17);
  for (const auto& s : complex.simplices) {
    out << s.dim();
    for (Index v : s.vertices) out << ',' << v;
    out << ',' << s.value << '\n';
  }
  out.precision(old);
}

}  // namespace momdist
