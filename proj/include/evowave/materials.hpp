#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "evowave/grid.hpp"
#include "evowave/linear_operator.hpp"

namespace evowave {

/// Cellwise SPD coefficient blocks of the instantaneous material law:
/// rho_star (d x d) and compliance (s x s, Kelvin-Voigt convention) on
/// elastic cells, kappa_inv (d x d) and the compressibility scalar on
/// acoustic cells. Blocks are indexed by position in the layout's ascending
/// label lists.
struct MaterialLaw {
  std::vector<Eigen::MatrixXd> rho_star;
  std::vector<Eigen::MatrixXd> compliance;
  std::vector<Eigen::MatrixXd> kappa_inv;
  std::vector<double> compressibility;

  static MaterialLaw uniform(const Grid& grid, const Eigen::MatrixXd& rho,
                             const Eigen::MatrixXd& compliance_block,
                             const Eigen::MatrixXd& kappa_inv_block,
                             double compressibility_value);

  /// Coverage (one block per cell of the matching label), shape and symmetry
  /// validation; throws on violation.
  void validate(const Grid& grid) const;
};

enum class BlockKind { RhoStar, Compliance, KappaInv, Compressibility };
const char* to_string(BlockKind k);

struct PositivityReport {
  double c0_estimate = 0.0;
  long worst_cell = -1;
  BlockKind block_kind = BlockKind::RhoStar;
  bool pass = false;

  struct RhoEntry {
    double rho = 0.0;
    double c0 = 0.0;
    bool pass = false;
  };
  // Filled by the rational check only.
  std::vector<RhoEntry> rho_sweep;
  /// Smallest listed rho from which every later entry is positive; NaN when
  /// the tail never turns positive or no sweep was run.
  double crossover_rho = 0.0;
  bool eventually_positive = false;
  bool nondecreasing_after_crossover = false;
};

/// Optional constant M1 blocks for the rational positivity check; same block
/// structure as M0 (velocity blocks on all cells), symmetry not required.
struct M1Law {
  std::vector<Eigen::MatrixXd> velocity;
  std::vector<Eigen::MatrixXd> stress;
  std::vector<double> pressure;
};

/// Symmetric block-diagonal cellwise operator with spectrally computed powers
/// (M0 and its roots). Blocks are symmetrized on ingestion so the operator is
/// exactly self-adjoint.
class CellwiseBlockOperator {
 public:
  CellwiseBlockOperator(const Grid& grid, const MaterialLaw& material);

  const FieldLayout& layout() const { return layout_; }
  LinearOperator op() const;
  LinearOperator inverse() const;
  LinearOperator sqrt() const;
  LinearOperator sqrt_inv() const;
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

 private:
  LinearOperator power_op(double p) const;
  void require_spd(const char* what) const;

  FieldLayout layout_;
  std::vector<Eigen::MatrixXd> vel_blocks_;
  std::vector<Eigen::MatrixXd> str_blocks_;
  std::vector<double> prs_blocks_;
  std::vector<Eigen::MatrixXd> vel_vecs_;
  std::vector<Eigen::VectorXd> vel_vals_;
  std::vector<Eigen::MatrixXd> str_vecs_;
  std::vector<Eigen::VectorXd> str_vals_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

/// Block-diagonal M(0): rho_star / kappa_inv on the velocity block per label,
/// compliance on the stress block, compressibility on the pressure block.
CellwiseBlockOperator assemble_M0(const Grid& grid, const MaterialLaw& material);

/// Smallest eigenvalue over all cell blocks (exact small symmetric
/// eigensolves); pass iff strictly positive.
PositivityReport check_positivity_M0(const Grid& grid, const MaterialLaw& material);

/// For each rho in the sorted list, the cellwise minimum eigenvalue of
/// rho*M0 + sym(M1); with M1 absent this reduces exactly to rho times the M0
/// certificate. Reports the observed crossover and tail monotonicity.
PositivityReport check_positivity_rational(const Grid& grid,
                                           const MaterialLaw& material,
                                           const std::optional<M1Law>& m1,
                                           std::vector<double> rho_values);

/// sqrt(M0^-1) A sqrt(M0^-1); inherits skewness from A. Throws when a block
/// is not SPD.
LinearOperator congruence_transform(const CellwiseBlockOperator& m0,
                                    const LinearOperator& a);

}  // namespace evowave
