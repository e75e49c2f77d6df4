#pragma once

#include <span>
#include <vector>

#include "evowave/materials.hpp"
#include "evowave/state.hpp"

namespace evowave {

/// Face between an elastic and an acoustic cell. The unit normal points from
/// the elastic into the acoustic side: it is `orientation` times the axis
/// unit vector.
struct InterfaceFace {
  long cell_elastic = -1;
  long cell_acoustic = -1;
  int axis = 0;
  int orientation = +1;  // +1 when the acoustic cell sits on the +axis side
  double area = 0.0;
};

/// All faces between differently labeled cells, ordered lexicographically by
/// (lower cell index, axis). Errors when a label is absent.
std::vector<InterfaceFace> classify_interface(const Grid& grid);

struct InterfaceResidualReport {
  double max_traction_residual = 0.0;
  double max_tangential_traction = 0.0;
  double max_normal_velocity_jump = 0.0;

  struct FaceEntry {
    long face = 0;
    double traction_residual = 0.0;
    double tangential_traction = 0.0;
    double normal_velocity_jump = 0.0;
  };
  std::vector<FaceEntry> per_face;
};

/// Nearest-cell reconstruction of T n on the elastic side and p n on the
/// acoustic side; reports |T n + p n| and the tangential traction magnitude
/// per face.
InterfaceResidualReport traction_balance_residual(const Grid& grid,
                                                  const StateVector& state,
                                                  std::span<const InterfaceFace> faces);

/// Nearest-cell |n . (v_elastic - v_acoustic)| per face.
InterfaceResidualReport normal_velocity_jump(const Grid& grid,
                                             const StateVector& state,
                                             std::span<const InterfaceFace> faces);

/// Both diagnostics in one pass.
InterfaceResidualReport interface_residuals(const Grid& grid,
                                            const StateVector& state,
                                            std::span<const InterfaceFace> faces);

struct PulseSpec {
  double onset = 0.0;
  double duration = 0.1;
  double amplitude = 1.0;
  double center = 0.25;
  double width = 0.03;
};

struct ReflectionResult {
  double r_measured = 0.0;
  double r_analytic = 0.0;
  double incident_peak = 0.0;
  double reflected_peak = 0.0;
  long cells = 0;
  double z_fluid = 0.0;
  double z_solid = 0.0;
};

/// 1D fluid-solid benchmark on [0,1] (fluid left of x = 0.65): a right-going
/// plane pressure pulse is launched in the fluid, the signed reflected /
/// incident peak ratio is measured at a probe and compared with
/// (Z_s - Z_f)/(Z_s + Z_f). Materials are scaled so both sound speeds are 1.
/// Errors when the pulse would reach a domain boundary before the measurement
/// window closes.
ReflectionResult reflection_benchmark(double z_fluid, double z_solid, long cells,
                                      const PulseSpec& pulse = {});

struct RefinementEntry {
  long cells = 0;
  double max_traction_residual = 0.0;
  double max_normal_velocity_jump = 0.0;
};

/// Max-over-time interface residuals of the reflection setup at dyadic
/// resolutions base_cells * 2^k, k = 0..levels-1.
std::vector<RefinementEntry> interface_residual_refinement(long base_cells,
                                                           int levels,
                                                           double z_fluid = 1.0,
                                                           double z_solid = 2.0);

}  // namespace evowave
