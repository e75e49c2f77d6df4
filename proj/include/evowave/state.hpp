#pragma once

#include <functional>
#include <span>
#include <vector>

#include "evowave/grid.hpp"

namespace evowave {

/// Unknown of the coupled system in one flat vector: velocity on all cells,
/// Kelvin-Voigt stress on elastic cells, pressure on acoustic cells.
struct StateVector {
  std::vector<double> data;

  static StateVector zeros(const FieldLayout& layout);
  static StateVector zeros(long n);

  std::span<double> velocity(const FieldLayout& l);
  std::span<const double> velocity(const FieldLayout& l) const;
  std::span<double> stress(const FieldLayout& l);
  std::span<const double> stress(const FieldLayout& l) const;
  std::span<double> pressure(const FieldLayout& l);
  std::span<const double> pressure(const FieldLayout& l) const;

  double& velocity_at(const FieldLayout& l, int comp, long cell);
  double& stress_at(const FieldLayout& l, int voigt_comp, long elastic_index);
  double& pressure_at(const FieldLayout& l, long acoustic_index);
};

/// Time-dependent right-hand side with declared causal support: sample()
/// leaves the buffer zero for t < onset_time without consulting evaluate.
struct SourceTerm {
  double onset_time = 0.0;
  std::function<void(double t, std::span<double> out)> evaluate;

  void sample(double t, std::span<double> out) const;
  bool active_at(double t) const { return evaluate && t >= onset_time; }
  static SourceTerm none();
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> energies;
};

}  // namespace evowave
