#include "momdist/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "momdist/distance.hpp"
#include "momdist/rng.hpp"

namespace momdist {

PointCloud gen_circle(std::size_t n, double radius, double noise_sigma, std::uint64_t seed) {
  if (!(radius > 0.0)) throw Error("circle radius must be positive");
  if (!(noise_sigma >= 0.0)) throw Error("noise scale must be nonnegative");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);
  PointCloud out(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = angle(rng);
    double p[2] = {radius * std::cos(t), radius * std::sin(t)};
    if (noise_sigma > 0.0) {
      p[0] += noise_sigma * noise(rng);
      p[1] += noise_sigma * noise(rng);
    }
    out.push_back(p);
  }
  return out;
}

namespace {

void check_window(const BoundingBox& w) {
  if (!(w.x1 > w.x0) || !(w.y1 > w.y0)) throw Error("degenerate window");
}

// Appends the in-window children of one parent.
void spawn_cluster(const BoundingBox& window, double mean_offspring, double cluster_radius, Rng& rng,
                   PointCloud& out, std::size_t limit) {
  std::uniform_real_distribution<double> ux(window.x0, window.x1), uy(window.y0, window.y1), u01(0.0, 1.0);
  std::poisson_distribution<long> kids(mean_offspring);
  const double px = ux(rng), py = uy(rng);
  const long count = mean_offspring > 0.0 ? kids(rng) : 0;
  for (long c = 0; c < count && out.size() < limit; ++c) {
    const double r = cluster_radius * std::sqrt(u01(rng));
    const double t = 2.0 * std::numbers::pi * u01(rng);
    const double p[2] = {px + r * std::cos(t), py + r * std::sin(t)};
    if (p[0] < window.x0 || p[0] > window.x1 || p[1] < window.y0 || p[1] > window.y1) continue;
    out.push_back(p);
  }
}

}  // namespace

PointCloud gen_matern_cluster(const BoundingBox& window, double parent_intensity, double mean_offspring,
                              double cluster_radius, std::uint64_t seed) {
  check_window(window);
  if (!(parent_intensity >= 0.0) || !(mean_offspring >= 0.0) || !(cluster_radius > 0.0))
    throw Error("Matern parameters must be nonnegative (radius positive)");
  Rng rng(seed);
  const double area = (window.x1 - window.x0) * (window.y1 - window.y0);
  std::poisson_distribution<long> parents_dist(parent_intensity * area);
  const long parents = parent_intensity > 0.0 ? parents_dist(rng) : 0;
  PointCloud out(2);
  for (long k = 0; k < parents; ++k)
    spawn_cluster(window, mean_offspring, cluster_radius, rng, out, static_cast<std::size_t>(-1));
  return out;
}

PointCloud gen_matern_exact(std::size_t count, const BoundingBox& window, double mean_offspring,
                            double cluster_radius, std::uint64_t seed) {
  check_window(window);
  if (!(mean_offspring > 0.0) || !(cluster_radius > 0.0)) throw Error("Matern parameters must be positive");
  Rng rng(seed);
  PointCloud out(2);
  while (out.size() < count) spawn_cluster(window, mean_offspring, cluster_radius, rng, out, count);
  return out;
}

PointCloud gen_uniform_box(std::size_t m, double low, double high, std::size_t dim, std::uint64_t seed) {
  if (!(low < high)) throw Error("uniform box needs low < high");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(low, high);
  std::vector<double> coords(m * dim);
  for (double& c : coords) c = u(rng);
  return PointCloud(dim, std::move(coords));
}

double determinant(const Matrix& m) {
  Matrix a = m;
  const std::size_t n = a.n;
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

Matrix random_rotation(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw Error("rotation dimension must be at least 1");
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix q{dim, std::vector<double>(dim * dim)};
  for (double& v : q.data) v = g(rng);
  // Modified Gram-Schmidt over columns, two passes for orthogonality.
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) dot += q(r, c) * q(r, prev);
        for (std::size_t r = 0; r < dim; ++r) q(r, c) -= dot * q(r, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += q(r, c) * q(r, c);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) q(r, c) /= norm;
  }
  if (determinant(q) < 0.0)
    for (std::size_t r = 0; r < dim; ++r) q(r, dim - 1) = -q(r, dim - 1);
  return q;
}

PointCloud embed_rotated(const PointCloud& cloud, const Matrix& rotation) {
  const std::size_t d = rotation.n;
  if (cloud.dim() > d) throw Error("rotation dimension is smaller than the cloud dimension");
  PointCloud out(d);
  std::vector<double> y(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    for (std::size_t r = 0; r < d; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) s += rotation(r, c) * x[c];
      y[r] = s;
    }
    out.push_back(y);
  }
  return out;
}

PointCloud gen_interlocked_circles(std::size_t n_per_circle, std::uint64_t seed) {
  if (n_per_circle < 1) throw Error("need at least one point per circle");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  PointCloud out(3);
  for (std::size_t i = 0; i < n_per_circle; ++i) {
    const double t = angle(rng);
    const double p[3] = {std::cos(t), std::sin(t), 0.0};
    out.push_back(p);
  }
  for (std::size_t i = 0; i < n_per_circle; ++i) {
    const double t = angle(rng);
    const double p[3] = {1.0 + std::cos(t), 0.0, std::sin(t)};
    out.push_back(p);
  }
  return out;
}

void IntensityImage::clamp() {
  for (double& v : intensities) v = std::clamp(v, 0.0, 1.0);
}

namespace {

// Next header token of a PGM stream, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok[0] != '#') return tok;
    std::string rest;
    std::getline(in, rest);
  }
  throw Error("truncated PGM header");
}

}  // namespace

IntensityImage read_pgm(std::istream& in) {
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw Error("not a PGM image (expected P2 or P5)");
  IntensityImage img;
  img.width = std::stoul(pgm_token(in));
  img.height = std::stoul(pgm_token(in));
  const double maxval = std::stod(pgm_token(in));
  if (img.width == 0 || img.height == 0 || !(maxval > 0.0) || maxval > 65535.0) throw Error("invalid PGM header");
  const std::size_t count = img.width * img.height;
  img.intensities.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      double v = 0.0;
      if (!(in >> v)) throw Error("truncated PGM data");
      img.intensities[i] = v / maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    const bool wide = maxval > 255.0;
    for (std::size_t i = 0; i < count; ++i) {
      int v = in.get();
      if (wide) v = (v << 8) | in.get();
      if (!in) throw Error("truncated PGM data");
      img.intensities[i] = static_cast<double>(v) / maxval;
    }
  }
  img.clamp();
  return img;
}

IntensityImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const IntensityImage& img) {
  out << "P2\n" << img.width << ' ' << img.height << "\n255\n";
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) {
      if (c) out << ' ';
      out << static_cast<int>(std::lround(std::clamp(img.at(r, c), 0.0, 1.0) * 255.0));
    }
    out << '\n';
  }
}

IntensityImage digit_image(const std::string& name) {
  if (name != "six" && name != "eight") throw Error("unknown built-in image '" + name + "'");
  constexpr std::size_t kSize = 28;
  IntensityImage img{kSize, kSize, std::vector<double>(kSize * kSize, 0.0)};
  // Strokes as distance-to-curve profiles in pixel coordinates (col, row).
  auto ring = [](double x, double y, double cx, double cy, double r) { return std::abs(std::hypot(x - cx, y - cy) - r); };
  auto segment = [](double x, double y, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double t = std::clamp(((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
    return std::hypot(x - ax - t * dx, y - ay - t * dy);
  };
  for (std::size_t r = 0; r < kSize; ++r)
    for (std::size_t c = 0; c < kSize; ++c) {
      const double x = static_cast<double>(c) + 0.5, y = static_cast<double>(r) + 0.5;
      const double d = std::min(ring(x, y, 14.0, 18.0, 5.5), segment(x, y, 8.6, 17.0, 16.5, 4.0));
      double v = std::clamp(1.6 - 0.8 * d, 0.0, 1.0);
      if (name == "eight") {
        // Faint stroke from the top of the stem back down to the loop.
        const double e = std::min(segment(x, y, 16.5, 4.0, 20.5, 8.5), segment(x, y, 20.5, 8.5, 18.5, 13.5));
        v = std::max(v, std::clamp(1.0 - e, 0.0, 0.6));
      }
      img.intensities[r * kSize + c] = v;
    }
  return img;
}

PointCloud image_to_pointcloud(const IntensityImage& img, double points_per_unit_intensity, std::uint64_t seed) {
  if (!(points_per_unit_intensity > 0.0)) throw Error("points per unit intensity must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointCloud out(2);
  for (std::size_t r = 0; r < img.height; ++r)
    for (std::size_t c = 0; c < img.width; ++c) {
      const auto count = static_cast<long>(std::lround(points_per_unit_intensity * img.at(r, c)));
      const double x0 = static_cast<double>(c);
      const double y0 = static_cast<double>(img.height - 1 - r);
      for (long k = 0; k < count; ++k) {
        const double p[2] = {x0 + u(rng), y0 + u(rng)};
        out.push_back(p);
      }
    }
  return out;
}

PointCloud pixel_centers(const IntensityImage& img) {
  PointCloud out(2);
  for (std::size_t r = 0; r < img.height; ++r)
    for (std::size_t c = 0; c < img.width; ++c) {
      const double p[2] = {static_cast<double>(c) + 0.5, static_cast<double>(img.height - 1 - r) + 0.5};
      out.push_back(p);
    }
  return out;
}

std::vector<double> rescaled_intensity(const PointCloud& cloud, const BlockPartition& part, const PointCloud& centers) {
  const WeightFunction f(cloud, part);
  auto d = f.evaluate(centers);
  if (d.empty()) throw Error("no pixel centres");
  const double top = *std::max_element(d.begin(), d.end());
  if (!(top > 0.0)) throw Error("degenerate rescale: MoM distance vanishes at every pixel centre");
  for (double& v : d) v = (top - v) / top;
  return d;
}

}  // namespace momdist
