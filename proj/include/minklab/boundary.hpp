#pragma once

#include "minklab/raster.hpp"
#include "minklab/shape.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace minklab {

enum class DensityClass { density0, density1, half, other };

std::string_view to_string(DensityClass c);

struct DensityEstimate {
  Vector point;
  std::vector<double> radii;
  std::vector<double> ratios;  // lambda(E n B(x, r)) / lambda(B(x, r))
  double theta = 0.0;
  DensityClass classification = DensityClass::other;
};

/// r_k = r0 2^-k for k < points.
std::vector<double> default_radii(double r0, int points = 5);

/// Density ratios of E at x. Exact in 1-D; otherwise counted on a local
/// raster of `samples` cells across each ball's diameter, centred at x.
/// Theta is the mean of the last three ratios; the class uses tolerance 0.05.
/// With a window, every ball must fit inside it (OutOfWindow otherwise).
DensityEstimate density_estimate(const Shape& e, const Vector& x, const std::vector<double>& radii,
                                 const std::optional<AxisBox>& window = std::nullopt, int samples = 256);

/// Reduced facets of the boundary mesh inside the domain.
BoundaryMesh reduced_boundary(const Shape& e, const Domain& d, int refinement = kDefaultRefinement);

enum class VoxelLabel { E0, E1, essential };

std::string_view to_string(VoxelLabel l);

/// Per-cell density label from digital-ball counts, averaged over the radii;
/// ratio <= 0.05 gives E0, >= 0.95 gives E1. Offsets leaving the grid are
/// ignored.
std::vector<VoxelLabel> classify_voxels(const VoxelSet& e, const std::vector<int>& radii_in_cells);

/// CSV with the index tuple and label of every cell.
void write_labels_csv(std::ostream& os, const Grid& g, const std::vector<VoxelLabel>& labels);

/// Points of density one and zero of a 1-D shape, as shapes.
Shape density_one_shape(const Shape& e);
Shape density_zero_shape(const Shape& e);

}  // namespace minklab
