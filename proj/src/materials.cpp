#include "evowave/materials.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace evowave {

namespace {

void require_symmetric(const Eigen::MatrixXd& b, const char* what) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale)
    throw DimensionError(std::string(what) + ": block is not symmetric");
}

double block_lambda_min(const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::RhoStar: return "rho_star";
    case BlockKind::Compliance: return "compliance";
    case BlockKind::KappaInv: return "kappa_inv";
    case BlockKind::Compressibility: return "compressibility";
  }
  return "?";
}

MaterialLaw MaterialLaw::uniform(const Grid& grid, const Eigen::MatrixXd& rho,
                                 const Eigen::MatrixXd& compliance_block,
                                 const Eigen::MatrixXd& kappa_inv_block,
                                 double compressibility_value) {
  MaterialLaw m;
  const long ne = grid.label_count(Label::Elastic);
  const long na = grid.label_count(Label::Acoustic);
  m.rho_star.assign(static_cast<size_t>(ne), rho);
  m.compliance.assign(static_cast<size_t>(ne), compliance_block);
  m.kappa_inv.assign(static_cast<size_t>(na), kappa_inv_block);
  m.compressibility.assign(static_cast<size_t>(na), compressibility_value);
  m.validate(grid);
  return m;
}

void MaterialLaw::validate(const Grid& grid) const {
  const int d = grid.dim();
  const int s = d * (d + 1) / 2;
  const size_t ne = static_cast<size_t>(grid.label_count(Label::Elastic));
  const size_t na = static_cast<size_t>(grid.label_count(Label::Acoustic));
  if (rho_star.size() != ne || compliance.size() != ne)
    throw DimensionError("material: elastic blocks do not cover the elastic cells");
  if (kappa_inv.size() != na || compressibility.size() != na)
    throw DimensionError("material: acoustic blocks do not cover the acoustic cells");
  for (const auto& b : rho_star) {
    if (b.rows() != d || b.cols() != d)
      throw DimensionError("material: rho_star block has wrong shape");
    require_symmetric(b, "rho_star");
  }
  for (const auto& b : compliance) {
    if (b.rows() != s || b.cols() != s)
      throw DimensionError("material: compliance block has wrong shape");
    require_symmetric(b, "compliance");
  }
  for (const auto& b : kappa_inv) {
    if (b.rows() != d || b.cols() != d)
      throw DimensionError("material: kappa_inv block has wrong shape");
    require_symmetric(b, "kappa_inv");
  }
}

CellwiseBlockOperator::CellwiseBlockOperator(const Grid& grid,
                                             const MaterialLaw& material)
    : layout_(make_layout(grid)) {
  material.validate(grid);
  const long n = layout_.cells;
  vel_blocks_.reserve(static_cast<size_t>(n));
  lambda_min_ = std::numeric_limits<double>::infinity();
  lambda_max_ = -std::numeric_limits<double>::infinity();

  auto ingest = [&](const Eigen::MatrixXd& raw, std::vector<Eigen::MatrixXd>& blocks,
                    std::vector<Eigen::MatrixXd>& vecs,
                    std::vector<Eigen::VectorXd>& vals) {
    Eigen::MatrixXd b = 0.5 * (raw + raw.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    lambda_min_ = std::min(lambda_min_, es.eigenvalues().minCoeff());
    lambda_max_ = std::max(lambda_max_, es.eigenvalues().maxCoeff());
    blocks.push_back(std::move(b));
    vecs.push_back(es.eigenvectors());
    vals.push_back(es.eigenvalues());
  };

  for (long c = 0; c < n; ++c) {
    if (grid.label(c) == Label::Elastic) {
      const long e = layout_.cell_to_elastic[static_cast<size_t>(c)];
      ingest(material.rho_star[static_cast<size_t>(e)], vel_blocks_, vel_vecs_,
             vel_vals_);
    } else {
      const long a = layout_.cell_to_acoustic[static_cast<size_t>(c)];
      ingest(material.kappa_inv[static_cast<size_t>(a)], vel_blocks_, vel_vecs_,
             vel_vals_);
    }
  }
  for (size_t e = 0; e < layout_.elastic_cells.size(); ++e)
    ingest(material.compliance[e], str_blocks_, str_vecs_, str_vals_);
  for (size_t a = 0; a < layout_.acoustic_cells.size(); ++a) {
    const double c = material.compressibility[a];
    prs_blocks_.push_back(c);
    lambda_min_ = std::min(lambda_min_, c);
    lambda_max_ = std::max(lambda_max_, c);
  }
}

void CellwiseBlockOperator::require_spd(const char* what) const {
  if (!(lambda_min_ > 0.0))
    throw CertificationError(std::string(what) +
                             ": a material block is not positive definite");
}

namespace {

// y_block = B x_block on component-major strides.
void apply_blocks(const std::vector<Eigen::MatrixXd>& blocks, long ncells,
                  int comps, std::span<const double> x, std::span<double> y) {
  double in[6], out[6];
  for (long c = 0; c < ncells; ++c) {
    const Eigen::MatrixXd& b = blocks[static_cast<size_t>(c)];
    for (int k = 0; k < comps; ++k)
      in[k] = x[static_cast<size_t>(k) * ncells + static_cast<size_t>(c)];
    for (int i = 0; i < comps; ++i) {
      double s = 0.0;
      for (int k = 0; k < comps; ++k) s += b(i, k) * in[k];
      out[i] = s;
    }
    for (int i = 0; i < comps; ++i)
      y[static_cast<size_t>(i) * ncells + static_cast<size_t>(c)] = out[i];
  }
}

}  // namespace

LinearOperator CellwiseBlockOperator::power_op(double p) const {
  std::vector<Eigen::MatrixXd> vel, str;
  std::vector<double> prs;
  auto build = [&](const std::vector<Eigen::MatrixXd>& vecs,
                   const std::vector<Eigen::VectorXd>& vals,
                   std::vector<Eigen::MatrixXd>& out) {
    out.reserve(vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i) {
      Eigen::VectorXd lp = vals[i].array().pow(p);
      Eigen::MatrixXd b = vecs[i] * lp.asDiagonal() * vecs[i].transpose();
      out.push_back(0.5 * (b + b.transpose()));
    }
  };
  build(vel_vecs_, vel_vals_, vel);
  build(str_vecs_, str_vals_, str);
  prs.reserve(prs_blocks_.size());
  for (double c : prs_blocks_) prs.push_back(std::pow(c, p));

  const FieldLayout lay = layout_;
  auto apply = [lay, vel = std::move(vel), str = std::move(str),
                prs = std::move(prs)](std::span<const double> x,
                                      std::span<double> y) {
    apply_blocks(vel, lay.cells, lay.dim, x.first(static_cast<size_t>(lay.velocity_len)),
                 y.first(static_cast<size_t>(lay.velocity_len)));
    const long ne = static_cast<long>(lay.elastic_cells.size());
    if (ne > 0)
      apply_blocks(str, ne, lay.voigt,
                   x.subspan(static_cast<size_t>(lay.stress_offset()),
                             static_cast<size_t>(lay.stress_len)),
                   y.subspan(static_cast<size_t>(lay.stress_offset()),
                             static_cast<size_t>(lay.stress_len)));
    const double* xp = x.data() + lay.pressure_offset();
    double* yp = y.data() + lay.pressure_offset();
    for (size_t a = 0; a < prs.size(); ++a) yp[a] = prs[a] * xp[a];
  };
  return LinearOperator(layout_.state_len, layout_.state_len, apply, apply);
}

LinearOperator CellwiseBlockOperator::op() const {
  const FieldLayout lay = layout_;
  auto apply = [lay, vel = vel_blocks_, str = str_blocks_,
                prs = prs_blocks_](std::span<const double> x, std::span<double> y) {
    apply_blocks(vel, lay.cells, lay.dim, x.first(static_cast<size_t>(lay.velocity_len)),
                 y.first(static_cast<size_t>(lay.velocity_len)));
    const long ne = static_cast<long>(lay.elastic_cells.size());
    if (ne > 0)
      apply_blocks(str, ne, lay.voigt,
                   x.subspan(static_cast<size_t>(lay.stress_offset()),
                             static_cast<size_t>(lay.stress_len)),
                   y.subspan(static_cast<size_t>(lay.stress_offset()),
                             static_cast<size_t>(lay.stress_len)));
    const double* xp = x.data() + lay.pressure_offset();
    double* yp = y.data() + lay.pressure_offset();
    for (size_t a = 0; a < prs.size(); ++a) yp[a] = prs[a] * xp[a];
  };
  return LinearOperator(layout_.state_len, layout_.state_len, apply, apply);
}

LinearOperator CellwiseBlockOperator::inverse() const {
  require_spd("inverse");
  return power_op(-1.0);
}

LinearOperator CellwiseBlockOperator::sqrt() const {
  require_spd("sqrt");
  return power_op(0.5);
}

LinearOperator CellwiseBlockOperator::sqrt_inv() const {
  require_spd("sqrt_inv");
  return power_op(-0.5);
}

CellwiseBlockOperator assemble_M0(const Grid& grid, const MaterialLaw& material) {
  return CellwiseBlockOperator(grid, material);
}

PositivityReport check_positivity_M0(const Grid& grid, const MaterialLaw& material) {
  material.validate(grid);
  const FieldLayout lay = make_layout(grid);
  PositivityReport r;
  r.c0_estimate = std::numeric_limits<double>::infinity();
  r.crossover_rho = std::numeric_limits<double>::quiet_NaN();
  auto consider = [&](double lmin, long cell, BlockKind kind) {
    if (lmin < r.c0_estimate) {
      r.c0_estimate = lmin;
      r.worst_cell = cell;
      r.block_kind = kind;
    }
  };
  for (size_t e = 0; e < lay.elastic_cells.size(); ++e) {
    consider(block_lambda_min(material.rho_star[e]), lay.elastic_cells[e],
             BlockKind::RhoStar);
    consider(block_lambda_min(material.compliance[e]), lay.elastic_cells[e],
             BlockKind::Compliance);
  }
  for (size_t a = 0; a < lay.acoustic_cells.size(); ++a) {
    consider(block_lambda_min(material.kappa_inv[a]), lay.acoustic_cells[a],
             BlockKind::KappaInv);
    consider(material.compressibility[a], lay.acoustic_cells[a],
             BlockKind::Compressibility);
  }
  r.pass = r.c0_estimate > 0.0;
  return r;
}

PositivityReport check_positivity_rational(const Grid& grid,
                                           const MaterialLaw& material,
                                           const std::optional<M1Law>& m1,
                                           std::vector<double> rho_values) {
  if (rho_values.empty())
    throw DimensionError("rational check: rho list must not be empty");
  for (double r : rho_values)
    if (!(r > 0.0)) throw DimensionError("rational check: rho values must be positive");
  std::sort(rho_values.begin(), rho_values.end());

  const FieldLayout lay = make_layout(grid);
  if (m1) {
    if (m1->velocity.size() != static_cast<size_t>(lay.cells) ||
        m1->stress.size() != lay.elastic_cells.size() ||
        m1->pressure.size() != lay.acoustic_cells.size())
      throw DimensionError("rational check: M1 block coverage mismatch");
  }

  PositivityReport base = check_positivity_M0(grid, material);
  PositivityReport r;
  r.crossover_rho = std::numeric_limits<double>::quiet_NaN();

  for (double rho : rho_values) {
    double c0;
    if (!m1) {
      // Exact reduction: lambda_min(rho M0) = rho * lambda_min(M0).
      c0 = rho * base.c0_estimate;
      r.worst_cell = base.worst_cell;
      r.block_kind = base.block_kind;
    } else {
      c0 = std::numeric_limits<double>::infinity();
      auto consider = [&](const Eigen::MatrixXd& b0, const Eigen::MatrixXd& b1,
                          long cell, BlockKind kind) {
        Eigen::MatrixXd m = rho * 0.5 * (b0 + b0.transpose()) +
                            0.5 * (b1 + b1.transpose());
        const double lmin = block_lambda_min(m);
        if (lmin < c0) {
          c0 = lmin;
          r.worst_cell = cell;
          r.block_kind = kind;
        }
      };
      for (long c = 0; c < lay.cells; ++c) {
        const auto& b1 = m1->velocity[static_cast<size_t>(c)];
        if (grid.label(c) == Label::Elastic) {
          const long e = lay.cell_to_elastic[static_cast<size_t>(c)];
          consider(material.rho_star[static_cast<size_t>(e)], b1, c,
                   BlockKind::RhoStar);
        } else {
          const long a = lay.cell_to_acoustic[static_cast<size_t>(c)];
          consider(material.kappa_inv[static_cast<size_t>(a)], b1, c,
                   BlockKind::KappaInv);
        }
      }
      for (size_t e = 0; e < lay.elastic_cells.size(); ++e)
        consider(material.compliance[e], m1->stress[e], lay.elastic_cells[e],
                 BlockKind::Compliance);
      for (size_t a = 0; a < lay.acoustic_cells.size(); ++a) {
        const double v = rho * material.compressibility[a] + m1->pressure[a];
        if (v < c0) {
          c0 = v;
          r.worst_cell = lay.acoustic_cells[a];
          r.block_kind = BlockKind::Compressibility;
        }
      }
    }
    r.rho_sweep.push_back({rho, c0, c0 > 0.0});
  }

  // Observed crossover: smallest rho from which every later entry passes.
  long cross = -1;
  for (long i = static_cast<long>(r.rho_sweep.size()) - 1; i >= 0; --i) {
    if (!r.rho_sweep[static_cast<size_t>(i)].pass) break;
    cross = i;
  }
  r.eventually_positive = cross >= 0;
  if (cross >= 0) {
    r.crossover_rho = r.rho_sweep[static_cast<size_t>(cross)].rho;
    r.nondecreasing_after_crossover = true;
    for (size_t i = static_cast<size_t>(cross) + 1; i < r.rho_sweep.size(); ++i)
      if (r.rho_sweep[i].c0 < r.rho_sweep[i - 1].c0)
        r.nondecreasing_after_crossover = false;
  }
  r.c0_estimate = r.rho_sweep.back().c0;
  r.pass = r.eventually_positive;
  return r;
}

LinearOperator congruence_transform(const CellwiseBlockOperator& m0,
                                    const LinearOperator& a) {
  if (a.domain_dim() != m0.layout().state_len ||
      a.codomain_dim() != m0.layout().state_len)
    throw DimensionError("congruence_transform: operator shape mismatch");
  auto half = m0.sqrt_inv();
  return compose(half, compose(a, half));
}

}  // namespace evowave
