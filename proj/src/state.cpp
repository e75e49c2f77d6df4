#include "evowave/state.hpp"

#include <algorithm>

namespace evowave {

StateVector StateVector::zeros(const FieldLayout& layout) {
  return StateVector{std::vector<double>(static_cast<size_t>(layout.state_len), 0.0)};
}

StateVector StateVector::zeros(long n) {
  return StateVector{std::vector<double>(static_cast<size_t>(n), 0.0)};
}

std::span<double> StateVector::velocity(const FieldLayout& l) {
  return std::span<double>(data).subspan(0, static_cast<size_t>(l.velocity_len));
}
std::span<const double> StateVector::velocity(const FieldLayout& l) const {
  return std::span<const double>(data).subspan(0, static_cast<size_t>(l.velocity_len));
}
std::span<double> StateVector::stress(const FieldLayout& l) {
  return std::span<double>(data).subspan(static_cast<size_t>(l.stress_offset()),
                                         static_cast<size_t>(l.stress_len));
}
std::span<const double> StateVector::stress(const FieldLayout& l) const {
  return std::span<const double>(data).subspan(static_cast<size_t>(l.stress_offset()),
                                               static_cast<size_t>(l.stress_len));
}
std::span<double> StateVector::pressure(const FieldLayout& l) {
  return std::span<double>(data).subspan(static_cast<size_t>(l.pressure_offset()),
                                         static_cast<size_t>(l.pressure_len));
}
std::span<const double> StateVector::pressure(const FieldLayout& l) const {
  return std::span<const double>(data).subspan(static_cast<size_t>(l.pressure_offset()),
                                               static_cast<size_t>(l.pressure_len));
}

double& StateVector::velocity_at(const FieldLayout& l, int comp, long cell) {
  return data[static_cast<size_t>(comp * l.cells + cell)];
}

double& StateVector::stress_at(const FieldLayout& l, int voigt_comp,
                               long elastic_index) {
  return data[static_cast<size_t>(l.stress_offset() +
                                  voigt_comp * static_cast<long>(l.elastic_cells.size()) +
                                  elastic_index)];
}

double& StateVector::pressure_at(const FieldLayout& l, long acoustic_index) {
  return data[static_cast<size_t>(l.pressure_offset() + acoustic_index)];
}

void SourceTerm::sample(double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (active_at(t)) evaluate(t, out);
}

SourceTerm SourceTerm::none() { return SourceTerm{0.0, nullptr}; }

}  // namespace evowave
