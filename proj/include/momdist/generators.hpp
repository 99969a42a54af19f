#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "momdist/point_cloud.hpp"
#include "momdist/sublevel_grid.hpp"

namespace momdist {

/// n points at uniformly random angles on a circle centred at the origin,
/// each perturbed by isotropic Gaussian noise of scale noise_sigma.
PointCloud gen_circle(std::size_t n, double radius, double noise_sigma, std::uint64_t seed);

/// Matern cluster process in a rectangular window: Poisson(intensity * area)
/// parents uniform in the window, Poisson(mean_offspring) children uniform
/// in the disk of cluster_radius around each parent. Children outside the
/// window are dropped; parents are not part of the output.
PointCloud gen_matern_cluster(const BoundingBox& window, double parent_intensity, double mean_offspring,
                              double cluster_radius, std::uint64_t seed);

/// Matern cluster sample conditioned on exactly `count` points: clusters
/// are drawn one parent at a time until enough children exist, and the
/// surplus of the last cluster is discarded.
PointCloud gen_matern_exact(std::size_t count, const BoundingBox& window, double mean_offspring,
                            double cluster_radius, std::uint64_t seed);

/// m i.i.d. points uniform in [low, high]^d.
PointCloud gen_uniform_box(std::size_t m, double low, double high, std::size_t dim, std::uint64_t seed);

/// Dense row-major square matrix.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> data;
  double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
};

/// Determinant by LU with partial pivoting.
double determinant(const Matrix& m);

/// Random element of SO(d): Gram-Schmidt on a Gaussian matrix, last column
/// negated if needed so the determinant is +1.
Matrix random_rotation(std::size_t dim, std::uint64_t seed);

/// Zero-pads every point to `rotation.n` coordinates and applies the rotation.
PointCloud embed_rotated(const PointCloud& cloud, const Matrix& rotation);

/// Two linked unit circles in R^3: A in the xy-plane about the origin, B in
/// the xz-plane about (1, 0, 0). n_per_circle uniform samples on each.
PointCloud gen_interlocked_circles(std::size_t n_per_circle, std::uint64_t seed);

/// Grey-level image with intensities in [0, 1], row 0 at the top.
struct IntensityImage {
  std::size_t width = 0, height = 0;
  std::vector<double> intensities;  // row-major

  double at(std::size_t row, std::size_t col) const { return intensities[row * width + col]; }
  void clamp();
};

/// Binary (P5) or ASCII (P2) PGM; intensities are normalised by maxval.
IntensityImage read_pgm(std::istream& in);
IntensityImage read_pgm_file(const std::string& path);
void write_pgm(std::ostream& out, const IntensityImage& img);  // ASCII P2, maxval 255

/// Built-in 28x28 test images: a single-loop digit ("six", lower loop and
/// stem) and its contaminated counterpart ("eight", a faint stroke closing a second loop).
IntensityImage digit_image(const std::string& name);

/// round(points_per_unit_intensity * intensity) points uniform in each
/// pixel's unit square. Pixel (row, col) covers [col, col+1] x [H-1-row, H-row].
PointCloud image_to_pointcloud(const IntensityImage& img, double points_per_unit_intensity, std::uint64_t seed);

/// Centres of the pixel squares used by image_to_pointcloud, row-major.
PointCloud pixel_centers(const IntensityImage& img);

/// (max d - d(p)) / max d over the supplied pixel centres, d = MoM distance.
std::vector<double> rescaled_intensity(const PointCloud& cloud, const BlockPartition& part,
                                       const PointCloud& centers);

}  // namespace momdist
