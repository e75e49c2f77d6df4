#include "evowave/grid.hpp"

#include <algorithm>
#include <cmath>

namespace evowave {

const char* to_string(Label l) {
  return l == Label::Elastic ? "elastic" : "acoustic";
}

Grid::Grid(int dim, std::span<const long> counts, std::span<const double> spacing,
           std::vector<Label> labels)
    : dim_(dim), labels_(std::move(labels)) {
  if (dim < 1 || dim > 3) throw DimensionError("grid: dim must be 1, 2 or 3");
  if (static_cast<long>(counts.size()) != dim ||
      static_cast<long>(spacing.size()) != dim)
    throw DimensionError("grid: counts/spacing arity does not match dim");
  cells_ = 1;
  for (int a = 0; a < dim; ++a) {
    if (counts[a] <= 0) throw DimensionError("grid: cell counts must be positive");
    if (!(spacing[a] > 0.0))
      throw DimensionError("grid: spacing must be strictly positive");
    counts_[a] = counts[a];
    spacing_[a] = spacing[a];
    cells_ *= counts[a];
  }
  if (static_cast<long>(labels_.size()) != cells_)
    throw DimensionError("grid: exactly one label per cell required");
}

Grid Grid::uniform(int dim, std::span<const long> counts,
                   std::span<const double> spacing, Label fill) {
  long n = 1;
  for (int a = 0; a < dim && a < static_cast<int>(counts.size()); ++a) n *= counts[a];
  return Grid(dim, counts, spacing, std::vector<Label>(static_cast<size_t>(n), fill));
}

Grid Grid::half_space(int dim, std::span<const long> counts,
                      std::span<const double> spacing, int axis, double threshold,
                      Label below) {
  if (axis < 0 || axis >= dim) throw DimensionError("grid: half-space axis out of range");
  Label above = below == Label::Elastic ? Label::Acoustic : Label::Elastic;
  Grid g = uniform(dim, counts, spacing, below);
  for (long c = 0; c < g.cells(); ++c) {
    if (g.cell_center(c)[static_cast<size_t>(axis)] >= threshold)
      g.labels_[static_cast<size_t>(c)] = above;
  }
  return g;
}

bool Grid::has_label(Label l) const {
  return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

long Grid::label_count(Label l) const {
  return std::count(labels_.begin(), labels_.end(), l);
}

long Grid::faces(int axis) const {
  long f = 1;
  for (int a = 0; a < dim_; ++a) f *= (a == axis) ? counts_[a] + 1 : counts_[a];
  return f;
}

long Grid::cell_index(std::span<const long> coord) const {
  long idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * counts_[a] + coord[a];
  return idx;
}

void Grid::cell_coord(long cell, std::span<long> out) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    out[a] = cell % counts_[a];
    cell /= counts_[a];
  }
}

std::array<double, 3> Grid::cell_center(long cell) const {
  std::array<long, 3> c{0, 0, 0};
  cell_coord(cell, std::span<long>(c.data(), dim_));
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a)
    x[a] = (static_cast<double>(c[a]) + 0.5) * spacing_[a];
  return x;
}

long Grid::neighbor(long cell, int axis, int step) const {
  std::array<long, 3> c{0, 0, 0};
  cell_coord(cell, std::span<long>(c.data(), dim_));
  c[axis] += step;
  if (c[axis] < 0 || c[axis] >= counts_[axis]) return -1;
  return cell_index(std::span<const long>(c.data(), dim_));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing_[a];
  return v;
}

double Grid::face_area(int axis) const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a)
    if (a != axis) v *= spacing_[a];
  return v;
}

long FieldLayout::jacobian_offset(int i, int j) const {
  long off = 0;
  for (int k = 0; k < i * dim + j; ++k) off += faces[static_cast<size_t>(k % dim)];
  return off;
}

FieldLayout make_layout(const Grid& grid) {
  FieldLayout l;
  l.dim = grid.dim();
  l.voigt = l.dim * (l.dim + 1) / 2;
  l.cells = grid.cells();
  long faces_total = 0;
  for (int a = 0; a < l.dim; ++a) {
    l.faces[static_cast<size_t>(a)] = grid.faces(a);
    faces_total += l.faces[static_cast<size_t>(a)];
  }
  l.velocity_len = l.dim * l.cells;
  l.jacobian_len = l.dim * faces_total;
  l.matrix_len = l.dim * l.dim * l.cells;
  l.cell_to_elastic.assign(static_cast<size_t>(l.cells), -1);
  l.cell_to_acoustic.assign(static_cast<size_t>(l.cells), -1);
  for (long c = 0; c < l.cells; ++c) {
    if (grid.label(c) == Label::Elastic) {
      l.cell_to_elastic[static_cast<size_t>(c)] =
          static_cast<long>(l.elastic_cells.size());
      l.elastic_cells.push_back(c);
    } else {
      l.cell_to_acoustic[static_cast<size_t>(c)] =
          static_cast<long>(l.acoustic_cells.size());
      l.acoustic_cells.push_back(c);
    }
  }
  l.stress_len = l.voigt * static_cast<long>(l.elastic_cells.size());
  l.pressure_len = static_cast<long>(l.acoustic_cells.size());
  l.state_len = l.velocity_len + l.stress_len + l.pressure_len;
  return l;
}

VoigtMap voigt_map(int dim) {
  VoigtMap m;
  m.s = dim * (dim + 1) / 2;
  const double r2 = std::sqrt(2.0);
  int q = 0;
  for (int i = 0; i < dim; ++i, ++q) {
    m.row[static_cast<size_t>(q)] = i;
    m.col[static_cast<size_t>(q)] = i;
    m.weight[static_cast<size_t>(q)] = 1.0;
  }
  if (dim == 2) {
    m.row[2] = 0; m.col[2] = 1; m.weight[2] = r2;
  } else if (dim == 3) {
    m.row[3] = 1; m.col[3] = 2; m.weight[3] = r2;
    m.row[4] = 0; m.col[4] = 2; m.weight[4] = r2;
    m.row[5] = 0; m.col[5] = 1; m.weight[5] = r2;
  }
  return m;
}

}  // namespace evowave
