#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momdist/point_cloud.hpp"

namespace momdist {

/// Power p in [1, inf] of the weighted radius (t^p - w^p)^(1/p).
class PowerParam {
 public:
  static PowerParam finite(double p);
  static PowerParam infinity() { return PowerParam(std::numeric_limits<double>::infinity()); }
  /// Accepts "inf", "infinity" or a real >= 1.
  static PowerParam parse(const std::string& text);

  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  double value() const { return p_; }
  std::string str() const;

 private:
  explicit PowerParam(double p) : p_(p) {}
  double p_;
};

inline constexpr double kDefaultBisectionTol = 1e-9;

/// Radius of the weighted ball at resolution t; -inf when t < w (empty ball).
double weighted_radius(double w, double t, PowerParam p);

/// First resolution at which the weighted ball of weight w is nonempty.
inline double vertex_time(double w) { return w; }

/// Smallest t with r(wx, t) + r(wy, t) >= dist. Closed forms for p = 1 and
/// p = inf; bisection to absolute tolerance `tol` otherwise.
double edge_time(double wx, double wy, double dist, PowerParam p, double tol = kDefaultBisectionTol);

/// Same as edge_time but always by bisection; used as an oracle.
double edge_time_bisect(double wx, double wy, double dist, PowerParam p, double tol);

struct Simplex {
  std::vector<Index> vertices;  // strictly increasing
  double value = 0.0;
  std::size_t dim() const { return vertices.size() - 1; }
};

/// Simplices sorted by (value, dim, lexicographic vertices). Faces precede
/// cofaces because edge and triangle values dominate their faces'.
struct FilteredComplex {
  std::vector<Simplex> simplices;
  std::size_t max_dim = 2;
  double t_max = std::numeric_limits<double>::infinity();
};

/// Sorts into canonical filtration order.
void sort_filtration(std::vector<Simplex>& simplices);

/// Pairwise edge times of the weighted Rips filtration, row-major n*n. Entries
/// above t_max are +inf. The diagonal holds the vertex times.
std::vector<double> edge_time_matrix(const PointCloud& cloud, std::span<const double> weights,
                                     PowerParam p, double t_max, double tol = kDefaultBisectionTol);

/// Smallest t after which the weighted Rips complex is a cone: min over
/// vertices of the latest edge time at that vertex.
double enclosing_time(std::span<const double> edge_times, std::size_t n);

/// Default cap: cloud diameter plus maximum weight.
double default_t_max(const PointCloud& cloud, std::span<const double> weights);

/// Flag complex of the weighted cover up to dimension max_dim (1 or 2).
/// When t_max is not given, default_t_max is used.
FilteredComplex build_weighted_rips(const PointCloud& cloud, std::span<const double> weights,
                                    PowerParam p, std::size_t max_dim = 2,
                                    std::optional<double> t_max = std::nullopt,
                                    double tol = kDefaultBisectionTol);

/// CSV rows `dim,v0[,v1[,v2]],value`.
void write_complex_csv(std::ostream& out, const FilteredComplex& complex);

}  // namespace momdist
