#pragma once

#include "evowave/materials.hpp"
#include "evowave/state.hpp"

namespace evowave {

/// One-directional plane pulse along `axis`: both characteristic components
/// are forced consistently with the local impedance, so only the wave running
/// in `sign` direction is launched. Spatial profile is a truncated Gaussian
/// of the given width around `center`; temporal profile sin^2(pi s) on
/// [onset, onset + duration].
SourceTerm make_plane_pulse_source(const Grid& grid, const MaterialLaw& material,
                                   int axis, int sign, double center_axis,
                                   double width, double onset, double duration,
                                   double amplitude);

/// Isotropic point source: a truncated-Gaussian monopole on the pressure /
/// stress-trace component ("pressure"), or a body force on one velocity
/// component ("velocity_x" ...).
SourceTerm make_point_source(const Grid& grid, const MaterialLaw& material,
                             const std::vector<double>& center, double width,
                             double onset, double duration, double amplitude,
                             const std::string& component);

}  // namespace evowave
