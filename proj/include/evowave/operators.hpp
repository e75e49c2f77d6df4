#pragma once

#include <utility>

#include "evowave/grid.hpp"
#include "evowave/linear_operator.hpp"

namespace evowave {

/// Discrete Jacobian with the homogeneous Dirichlet convention: block (i, j)
/// holds the axis-j first difference of velocity component i sampled on the
/// axis-j faces, with field values outside the grid taken as zero. In 1D with
/// n cells this is the (n+1) x n difference matrix. The adjoint is the exact
/// transpose.
LinearOperator build_grad_dirichlet(const Grid& grid);

/// Weak divergence div := -(grad)^T. No new discretization decision is made.
LinearOperator weak_div(const LinearOperator& grad);

/// Componentwise two-face mean taking face-sampled Jacobians to collocated
/// cell matrix fields; adjoint spreads half to each bounding face.
LinearOperator face_to_cell_average(const Grid& grid);

/// Pointwise projection of d x d matrices onto Kelvin-Voigt vectors with
/// sqrt(2)-weighted off-diagonals; the adjoint is the isometric embedding, so
/// sym_projection o adjoint = identity on Voigt fields.
LinearOperator sym_projection(int dim, long points = 1);

/// Pointwise trace of d x d matrices; the adjoint places the scalar on the
/// diagonal.
LinearOperator trace_op(int dim, long points = 1);

/// Selection of the cells carrying `label` from a cell field of `components`
/// blocks; the adjoint extends by zero. Errors when no cell carries the label.
LinearOperator restriction(const Grid& grid, Label label, int components = 1);

/// Skew-symmetric block operator [[0, -C^T], [C, 0]] together with its
/// lower-left block, kept for descendant construction.
struct SkewPair {
  LinearOperator op;
  LinearOperator lower_left;
};

SkewPair mother(const LinearOperator& c);

/// Descendant [[0, -(BC)^T], [BC, 0]]; discretely the closure identity of the
/// construction is the exact transpose identity (BC)^T = C^T B^T.
SkewPair descendant(const SkewPair& mother_a, const LinearOperator& b);

/// Whole-domain symmetric-elasticity descendant (B = sym projection after the
/// face average).
SkewPair build_elastic_A(const Grid& grid);

/// Whole-domain acoustics descendant (B = trace after the face average).
SkewPair build_acoustic_A(const Grid& grid);

/// Coupled elasto-acoustic operator: B = [restrict_E o sym ; -restrict_A o
/// trace] o face average applied to the mother with C = -grad. Requires both
/// labels; skew-symmetric by construction with zero diagonal blocks.
SkewPair build_coupled_A(const Grid& grid);

struct WindowInfo {
  long first_cell = 0;
  long last_cell = 0;
  long lower_face = 0;  // face at the lower window edge
  long upper_face = 0;  // face at the upper window edge
};

WindowInfo order_dependence_window(long n);

/// The two inequivalent descendants of the 1D derivative on [-1,1] cut off by
/// the window ]-1/2,1/2[: the first keeps only faces strictly inside the
/// window block (edge condition lands on the second component), the second
/// also keeps the edge faces (Dirichlet ghosts on the first component). Both
/// are skew; they differ exactly on the rows/columns attached to the window
/// edges.
std::pair<LinearOperator, LinearOperator> order_dependence_example(long n);

}  // namespace evowave
