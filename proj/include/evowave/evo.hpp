#pragma once

#include <cstdint>
#include <memory>

#include "evowave/materials.hpp"
#include "evowave/operators.hpp"
#include "evowave/state.hpp"

namespace evowave {

/// The conserved quadratic form: 1/2 <U, M0 U>.
double energy(const StateVector& u, const LinearOperator& m0);

/// SPD operator together with its spectral roots, the shape the shifted
/// solver and the Cayley step need from M0.
struct SpdOperator {
  LinearOperator apply;
  LinearOperator inverse;
  LinearOperator sqrt;
  LinearOperator sqrt_inv;
  double lambda_min = 1.0;
  double lambda_max = 1.0;

  static SpdOperator identity_op(long n);
};

SpdOperator spd_from(const CellwiseBlockOperator& m0);

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // true relative residual in the original variables
};

/// Solves (M0 + tau/2 A) x = rhs to relative residual tol, via GMRES on the
/// congruence-symmetrized system (I + tau/2 sqrt(M0^-1) A sqrt(M0^-1)), which
/// is a normal matrix for skew A. Deterministic; throws SolverError with the
/// final residual when max_iter is exceeded.
std::vector<double> solve_shifted(const SpdOperator& m0, const LinearOperator& a,
                                  double tau, std::span<const double> rhs,
                                  double tol, int max_iter,
                                  SolveStats* stats = nullptr);

/// One midpoint (Cayley) step: (M0 + tau/2 A) U+ = (M0 - tau/2 A) U +
/// tau f(t + tau/2). Conserves the M0 form exactly for skew A and zero
/// source, up to solver tolerance.
StateVector step_crank_nicolson(const StateVector& u, const SpdOperator& m0,
                                const LinearOperator& a, const SourceTerm& f,
                                double t, double tau, double tol,
                                int max_iter = 400);

/// Coupled operator when both labels are present, otherwise the single-regime
/// descendant for the uniform label.
SkewPair assemble_spatial_operator(const Grid& grid);

struct RunParams {
  double t_end = 0.0;
  double tau = 0.0;
  double tol = 1e-12;
  long snapshot_stride = 10;
  int max_iter = 400;
};

struct RunInfo {
  PositivityReport certification;
  long steps = 0;
  long total_iterations = 0;
};

/// Crank-Nicolson integration of the transformed system from U = 0, stepping
/// in the congruence variables W = sqrt(M0) U. Certification runs in the
/// constructor and aborts on failure.
class Stepper {
 public:
  Stepper(const Grid& grid, const MaterialLaw& material, const SourceTerm& source,
          double tau, double tol, int max_iter = 400);

  void advance();
  long step_count() const { return steps_; }
  double time() const;
  StateVector state() const;
  double current_energy() const;
  long total_iterations() const { return total_iterations_; }
  const FieldLayout& layout() const;
  const LinearOperator& spatial_op() const { return a_.op; }
  const PositivityReport& certification() const { return certification_; }
  const CellwiseBlockOperator& m0() const { return *m0_; }

 private:
  std::shared_ptr<CellwiseBlockOperator> m0_;
  SpdOperator spd_;
  SkewPair a_;
  LinearOperator s_;  // congruence-transformed spatial operator
  SourceTerm source_;
  PositivityReport certification_;
  double tau_;
  double tol_w_;
  int max_iter_;
  long steps_ = 0;
  long total_iterations_ = 0;
  std::vector<double> w_;
};

/// Integrates from zero initial data and records snapshots every
/// `snapshot_stride` steps (plus t = 0 and the final step). Snapshots
/// strictly before the source onset are exactly zero.
Trajectory run(const Grid& grid, const MaterialLaw& material,
               const SourceTerm& source, const RunParams& params,
               RunInfo* info = nullptr);

/// Dense unitary-group propagator exp(-t sqrt(M0^-1) A sqrt(M0^-1)) in the
/// congruence variables; exact in time for the semi-discrete system and
/// energy-preserving. Guarded by the dense unknown cap.
StateVector dense_expm_oracle(const Grid& grid, const MaterialLaw& material,
                              const StateVector& u0, double t,
                              long cap = kDenseCapDefault);

}  // namespace evowave
