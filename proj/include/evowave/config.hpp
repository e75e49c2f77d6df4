#pragma once

#include <string>
#include <vector>

#include "evowave/grid.hpp"
#include "evowave/materials.hpp"
#include "evowave/state.hpp"

namespace evowave {

/// Per-region constant coefficient block. `Lame` is accepted for the elastic
/// compliance only and denotes the inverse of the isotropic Kelvin stiffness
/// built from (lambda, mu).
struct MatrixSpec {
  enum class Kind { Iso, Diag, Full, Lame };
  Kind kind = Kind::Iso;
  std::vector<double> values{1.0};
  bool operator==(const MatrixSpec&) const = default;
};

struct GridSpec {
  enum class LabelRule { Uniform, Half, Cells };
  int dim = 1;
  std::vector<long> counts;
  std::vector<double> spacing;
  LabelRule rule = LabelRule::Uniform;
  Label uniform_label = Label::Acoustic;
  int half_axis = 0;
  double half_threshold = 0.0;
  Label half_below = Label::Acoustic;
  std::vector<Label> cell_labels;
  bool operator==(const GridSpec&) const = default;
};

struct ElasticSpec {
  MatrixSpec rho;
  MatrixSpec compliance;
  std::string rho_table;         // optional CSV override: cell, entries...
  std::string compliance_table;
  bool operator==(const ElasticSpec&) const = default;
};

struct AcousticSpec {
  MatrixSpec kappa_inv;
  double compressibility = 1.0;
  std::string kappa_inv_table;
  std::string compressibility_table;
  bool operator==(const AcousticSpec&) const = default;
};

struct SourceSpec {
  enum class Type { None, Point, Plane };
  Type type = Type::None;
  double onset = 0.0;
  double duration = 0.1;
  double amplitude = 1.0;
  double width = 0.05;
  std::vector<double> center;
  int axis = 0;
  int sign = +1;
  std::string component = "pressure";
  bool operator==(const SourceSpec&) const = default;
};

struct SteppingSpec {
  double tau = 0.0;   // required for run/convergence
  double t_end = 0.0;
  double tol = 1e-12;
  long stride = 10;
  int max_iter = 400;
  bool operator==(const SteppingSpec&) const = default;
};

struct OutputSpec {
  std::string directory;
  bool snapshots = true;
  bool operator==(const OutputSpec&) const = default;
};

struct SimulationConfig {
  GridSpec grid;
  ElasticSpec elastic;
  AcousticSpec acoustic;
  SourceSpec source;
  SteppingSpec stepping;
  OutputSpec output;
  bool operator==(const SimulationConfig&) const = default;
};

/// Parses the documented key-value grammar (nested [sections], whitespace
/// separated values, '#' comments). Unknown sections/keys, duplicates,
/// missing required keys and type mismatches are errors naming the offending
/// key and line.
SimulationConfig parse_config(const std::string& text,
                              const std::string& filename = "<config>");
SimulationConfig load_config(const std::string& path);

/// Canonical form; parse_config(emit_config(c)) == c.
std::string emit_config(const SimulationConfig& config);

Grid build_grid(const GridSpec& spec);
/// Realizes the material: per-region constant blocks, then per-cell table
/// overrides (CSV rows: cell index, row-major entries). Relative table paths
/// resolve against `base_dir`.
MaterialLaw build_material(const Grid& grid, const SimulationConfig& config,
                           const std::string& base_dir = ".");
SourceTerm build_source(const Grid& grid, const MaterialLaw& material,
                        const SourceSpec& spec);

}  // namespace evowave
