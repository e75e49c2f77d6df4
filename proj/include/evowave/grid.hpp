#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "evowave/errors.hpp"

namespace evowave {

enum class Label : std::uint8_t { Elastic = 0, Acoustic = 1 };

const char* to_string(Label l);

/// Cartesian cell grid with a per-cell subdomain label. Cells are addressed
/// row-major with the last axis fastest. Faces of axis j carry one extra slab
/// along j (counts[j] + 1), including the two boundary faces.
class Grid {
 public:
  Grid(int dim, std::span<const long> counts, std::span<const double> spacing,
       std::vector<Label> labels);

  static Grid uniform(int dim, std::span<const long> counts,
                      std::span<const double> spacing, Label fill);

  /// Cells whose center coordinate along `axis` is below `threshold` receive
  /// `below`, all others the opposite label.
  static Grid half_space(int dim, std::span<const long> counts,
                         std::span<const double> spacing, int axis,
                         double threshold, Label below);

  int dim() const { return dim_; }
  long cells() const { return cells_; }
  long count(int axis) const { return counts_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  Label label(long cell) const { return labels_[static_cast<size_t>(cell)]; }
  const std::vector<Label>& labels() const { return labels_; }
  bool has_label(Label l) const;
  long label_count(Label l) const;

  long faces(int axis) const;
  long cell_index(std::span<const long> coord) const;
  void cell_coord(long cell, std::span<long> out) const;
  std::array<double, 3> cell_center(long cell) const;
  /// Index of the neighbor `step` cells away along `axis`, or -1 outside.
  long neighbor(long cell, int axis, int step) const;
  double cell_volume() const;
  double face_area(int axis) const;

 private:
  int dim_ = 1;
  std::array<long, 3> counts_{1, 1, 1};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
  std::vector<Label> labels_;
  long cells_ = 0;
};

/// Sample layouts for fields over a grid. Component fields are stored
/// component-major: all samples of one component form one contiguous block.
/// Jacobian blocks are ordered (i, j) row-major; block (i, j) holds the
/// axis-j face samples of d_j of velocity component i. The state vector is
/// [velocity | stress | pressure].
struct FieldLayout {
  int dim = 0;
  int voigt = 0;  // d(d+1)/2
  long cells = 0;
  std::array<long, 3> faces{0, 0, 0};
  long velocity_len = 0;
  long jacobian_len = 0;
  long matrix_len = 0;  // collocated full-matrix field, d*d blocks of cells
  long stress_len = 0;
  long pressure_len = 0;
  long state_len = 0;
  std::vector<long> elastic_cells;   // ascending grid cell ids
  std::vector<long> acoustic_cells;  // ascending grid cell ids
  std::vector<long> cell_to_elastic;
  std::vector<long> cell_to_acoustic;

  long jacobian_offset(int i, int j) const;
  long velocity_offset() const { return 0; }
  long stress_offset() const { return velocity_len; }
  long pressure_offset() const { return velocity_len + stress_len; }
};

FieldLayout make_layout(const Grid& grid);

/// Voigt component table in the isometric (Kelvin) convention: diagonal
/// entries first with weight 1, then off-diagonals with weight sqrt(2), so
/// the stored Euclidean norm of a symmetric tensor equals its Frobenius norm.
struct VoigtMap {
  int s = 0;
  std::array<int, 6> row{};
  std::array<int, 6> col{};
  std::array<double, 6> weight{};
};

VoigtMap voigt_map(int dim);

}  // namespace evowave
