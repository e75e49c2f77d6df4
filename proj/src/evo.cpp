#include "evowave/evo.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace evowave {

double energy(const StateVector& u, const LinearOperator& m0) {
  if (static_cast<long>(u.data.size()) != m0.domain_dim())
    throw DimensionError("energy: state/operator shape mismatch");
  std::vector<double> mu(u.data.size());
  m0.apply(u.data, mu);
  return 0.5 * dot(u.data, mu);
}

SpdOperator SpdOperator::identity_op(long n) {
  return SpdOperator{identity_operator(n), identity_operator(n),
                     identity_operator(n), identity_operator(n), 1.0, 1.0};
}

SpdOperator spd_from(const CellwiseBlockOperator& m0) {
  return SpdOperator{m0.op(), m0.inverse(), m0.sqrt(), m0.sqrt_inv(),
                     m0.lambda_min(), m0.lambda_max()};
}

namespace {

// Full GMRES (modified Gram-Schmidt, Givens) for (I + c S) x = b. The matrix
// is normal when S is skew, so convergence is governed by the spectrum
// 1 + i c lambda. Returns immediately with x = 0 on zero rhs.
std::vector<double> gmres_unit_plus_skew(const LinearOperator& s, double c,
                                         std::span<const double> b, double tol,
                                         int max_iter, SolveStats* stats) {
  const long n = static_cast<long>(b.size());
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  const double beta = norm2(b);
  if (beta == 0.0) {
    if (stats) *stats = SolveStats{0, 0.0};
    return x;
  }

  std::vector<std::vector<double>> basis;
  basis.emplace_back(b.begin(), b.end());
  for (auto& v : basis[0]) v /= beta;

  std::vector<std::vector<double>> hcols;
  std::vector<double> cs, sn, g;
  g.push_back(beta);

  std::vector<double> w(static_cast<size_t>(n));
  double res = beta;
  int k = 0;
  for (; k < max_iter; ++k) {
    // w = (I + c S) v_k
    s.apply(basis[static_cast<size_t>(k)], w);
    for (long i = 0; i < n; ++i)
      w[static_cast<size_t>(i)] =
          basis[static_cast<size_t>(k)][static_cast<size_t>(i)] +
          c * w[static_cast<size_t>(i)];

    std::vector<double> h(static_cast<size_t>(k) + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      const double hij = dot(w, basis[static_cast<size_t>(i)]);
      h[static_cast<size_t>(i)] = hij;
      const auto& vi = basis[static_cast<size_t>(i)];
      for (long m = 0; m < n; ++m)
        w[static_cast<size_t>(m)] -= hij * vi[static_cast<size_t>(m)];
    }
    const double hnext = norm2(w);
    h[static_cast<size_t>(k) + 1] = hnext;

    for (int i = 0; i < k; ++i) {
      const double t = cs[static_cast<size_t>(i)] * h[static_cast<size_t>(i)] +
                       sn[static_cast<size_t>(i)] * h[static_cast<size_t>(i) + 1];
      h[static_cast<size_t>(i) + 1] =
          -sn[static_cast<size_t>(i)] * h[static_cast<size_t>(i)] +
          cs[static_cast<size_t>(i)] * h[static_cast<size_t>(i) + 1];
      h[static_cast<size_t>(i)] = t;
    }
    const double denom = std::hypot(h[static_cast<size_t>(k)],
                                    h[static_cast<size_t>(k) + 1]);
    const double ck = denom > 0.0 ? h[static_cast<size_t>(k)] / denom : 1.0;
    const double sk = denom > 0.0 ? h[static_cast<size_t>(k) + 1] / denom : 0.0;
    cs.push_back(ck);
    sn.push_back(sk);
    h[static_cast<size_t>(k)] = denom;
    h[static_cast<size_t>(k) + 1] = 0.0;
    hcols.push_back(std::move(h));

    g.push_back(-sk * g[static_cast<size_t>(k)]);
    g[static_cast<size_t>(k)] *= ck;
    res = std::abs(g.back());

    const bool lucky = hnext <= 1e-14 * beta;
    if (res <= tol * beta || lucky) {
      ++k;
      break;
    }
    for (auto& v : w) v /= hnext;
    basis.push_back(w);
  }

  // Back substitution and solution assembly.
  std::vector<double> y(static_cast<size_t>(k), 0.0);
  for (int i = k - 1; i >= 0; --i) {
    double s_acc = g[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      s_acc -= hcols[static_cast<size_t>(j)][static_cast<size_t>(i)] *
               y[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s_acc / hcols[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  for (int j = 0; j < k; ++j) {
    const auto& vj = basis[static_cast<size_t>(j)];
    const double yj = y[static_cast<size_t>(j)];
    for (long m = 0; m < n; ++m)
      x[static_cast<size_t>(m)] += yj * vj[static_cast<size_t>(m)];
  }

  if (res > tol * beta) {
    std::ostringstream msg;
    msg << "shifted solve: no convergence within " << max_iter
        << " iterations, relative residual " << res / beta;
    throw SolverError(msg.str(), k, res / beta);
  }
  if (stats) *stats = SolveStats{k, res / beta};
  return x;
}

double w_space_tol(const SpdOperator& m0, double tol) {
  // Tightened so the residual contract holds in the original variables:
  // ||r|| <= sqrt(lmax/lmin) ||r_W|| relative.
  return tol * 0.1 * std::sqrt(m0.lambda_min / m0.lambda_max);
}

}  // namespace

std::vector<double> solve_shifted(const SpdOperator& m0, const LinearOperator& a,
                                  double tau, std::span<const double> rhs,
                                  double tol, int max_iter, SolveStats* stats) {
  if (!(tol > 0.0)) throw DimensionError("solve_shifted: tol must be positive");
  const long n = static_cast<long>(rhs.size());
  if (a.domain_dim() != n || a.codomain_dim() != n)
    throw DimensionError("solve_shifted: shape mismatch");
  auto s = compose(m0.sqrt_inv, compose(a, m0.sqrt_inv));
  std::vector<double> bw(static_cast<size_t>(n));
  m0.sqrt_inv.apply(rhs, bw);
  SolveStats inner;
  auto w = gmres_unit_plus_skew(s, 0.5 * tau, bw, w_space_tol(m0, tol), max_iter,
                                &inner);
  std::vector<double> x(static_cast<size_t>(n));
  m0.sqrt_inv.apply(w, x);
  if (stats) {
    stats->iterations = inner.iterations;
    // True relative residual in the original variables.
    std::vector<double> r(static_cast<size_t>(n));
    std::vector<double> t(static_cast<size_t>(n));
    m0.apply.apply(x, r);
    a.apply(x, t);
    for (long i = 0; i < n; ++i)
      r[static_cast<size_t>(i)] += 0.5 * tau * t[static_cast<size_t>(i)] -
                                   rhs[static_cast<size_t>(i)];
    const double nb = norm2(rhs);
    stats->residual = nb > 0.0 ? norm2(r) / nb : norm2(r);
  }
  return x;
}

StateVector step_crank_nicolson(const StateVector& u, const SpdOperator& m0,
                                const LinearOperator& a, const SourceTerm& f,
                                double t, double tau, double tol, int max_iter) {
  if (!(tau != 0.0)) throw DimensionError("step: tau must be nonzero");
  const long n = static_cast<long>(u.data.size());
  std::vector<double> rhs(static_cast<size_t>(n));
  std::vector<double> tmp(static_cast<size_t>(n));
  m0.apply.apply(u.data, rhs);
  a.apply(u.data, tmp);
  for (long i = 0; i < n; ++i)
    rhs[static_cast<size_t>(i)] -= 0.5 * tau * tmp[static_cast<size_t>(i)];
  const double tmid = t + 0.5 * tau;
  if (f.active_at(tmid)) {
    f.sample(tmid, tmp);
    for (long i = 0; i < n; ++i)
      rhs[static_cast<size_t>(i)] += tau * tmp[static_cast<size_t>(i)];
  }
  StateVector out;
  out.data = solve_shifted(m0, a, tau, rhs, tol, max_iter);
  return out;
}

SkewPair assemble_spatial_operator(const Grid& grid) {
  const bool has_e = grid.has_label(Label::Elastic);
  const bool has_a = grid.has_label(Label::Acoustic);
  if (has_e && has_a) return build_coupled_A(grid);
  if (has_e) return build_elastic_A(grid);
  return build_acoustic_A(grid);
}

Stepper::Stepper(const Grid& grid, const MaterialLaw& material,
                 const SourceTerm& source, double tau, double tol, int max_iter)
    : source_(source), tau_(tau), max_iter_(max_iter) {
  if (!(tau > 0.0)) throw DimensionError("stepper: tau must be positive");
  if (!(tol > 0.0)) throw DimensionError("stepper: tol must be positive");
  certification_ = check_positivity_M0(grid, material);
  if (!certification_.pass) {
    std::ostringstream msg;
    msg << "material certification failed: c0 = " << certification_.c0_estimate
        << " at cell " << certification_.worst_cell << " ("
        << to_string(certification_.block_kind) << ")";
    throw CertificationError(msg.str());
  }
  m0_ = std::make_shared<CellwiseBlockOperator>(grid, material);
  spd_ = spd_from(*m0_);
  a_ = assemble_spatial_operator(grid);
  s_ = compose(spd_.sqrt_inv, compose(a_.op, spd_.sqrt_inv));
  tol_w_ = w_space_tol(spd_, tol);
  w_.assign(static_cast<size_t>(m0_->layout().state_len), 0.0);
}

void Stepper::advance() {
  const long n = static_cast<long>(w_.size());
  const double tmid = static_cast<double>(steps_) * tau_ + 0.5 * tau_;
  std::vector<double> rhs(static_cast<size_t>(n));
  s_.apply(w_, rhs);
  for (long i = 0; i < n; ++i)
    rhs[static_cast<size_t>(i)] =
        w_[static_cast<size_t>(i)] - 0.5 * tau_ * rhs[static_cast<size_t>(i)];
  if (source_.active_at(tmid)) {
    std::vector<double> f(static_cast<size_t>(n));
    std::vector<double> fw(static_cast<size_t>(n));
    source_.sample(tmid, f);
    spd_.sqrt_inv.apply(f, fw);
    for (long i = 0; i < n; ++i)
      rhs[static_cast<size_t>(i)] += tau_ * fw[static_cast<size_t>(i)];
  }
  SolveStats st;
  w_ = gmres_unit_plus_skew(s_, 0.5 * tau_, rhs, tol_w_, max_iter_, &st);
  total_iterations_ += st.iterations;
  ++steps_;
}

double Stepper::time() const { return static_cast<double>(steps_) * tau_; }

StateVector Stepper::state() const {
  StateVector u = StateVector::zeros(m0_->layout());
  spd_.sqrt_inv.apply(w_, u.data);
  return u;
}

double Stepper::current_energy() const { return 0.5 * dot(w_, w_); }

const FieldLayout& Stepper::layout() const { return m0_->layout(); }

Trajectory run(const Grid& grid, const MaterialLaw& material,
               const SourceTerm& source, const RunParams& params, RunInfo* info) {
  if (!(params.t_end > 0.0)) throw DimensionError("run: t_end must be positive");
  if (!(params.tau > 0.0)) throw DimensionError("run: tau must be positive");
  const long stride = std::max<long>(1, params.snapshot_stride);
  Stepper stepper(grid, material, source, params.tau, params.tol, params.max_iter);

  const long steps =
      std::max<long>(1, std::llround(params.t_end / params.tau));
  Trajectory traj;
  auto record = [&traj, &stepper]() {
    traj.times.push_back(stepper.time());
    traj.states.push_back(stepper.state());
    traj.energies.push_back(
        energy(traj.states.back(), stepper.m0().op()));
  };
  record();
  for (long k = 1; k <= steps; ++k) {
    stepper.advance();
    if (k % stride == 0 || k == steps) record();
  }
  if (info) {
    info->certification = stepper.certification();
    info->steps = steps;
    info->total_iterations = stepper.total_iterations();
  }
  return traj;
}

StateVector dense_expm_oracle(const Grid& grid, const MaterialLaw& material,
                              const StateVector& u0, double t, long cap) {
  const CellwiseBlockOperator m0(grid, material);
  const long n = m0.layout().state_len;
  if (n > cap) throw CapError("dense_expm_oracle: problem exceeds the dense cap");
  if (static_cast<long>(u0.data.size()) != n)
    throw DimensionError("dense_expm_oracle: state shape mismatch");
  auto a = assemble_spatial_operator(grid);
  auto sqrt_inv = m0.sqrt_inv();
  auto s = compose(sqrt_inv, compose(a.op, sqrt_inv));

  Eigen::MatrixXd sm(n, n);
  {
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    std::vector<double> y(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) {
      e[static_cast<size_t>(j)] = 1.0;
      s.apply(e, y);
      e[static_cast<size_t>(j)] = 0.0;
      for (long i = 0; i < n; ++i) sm(i, j) = -y[static_cast<size_t>(i)];
    }
  }
  Eigen::MatrixXd prop = (t * sm).exp();

  std::vector<double> w0(static_cast<size_t>(n));
  m0.sqrt().apply(u0.data, w0);
  Eigen::VectorXd w = prop * Eigen::Map<const Eigen::VectorXd>(w0.data(), n);
  StateVector out = StateVector::zeros(n);
  std::vector<double> wt(w.data(), w.data() + n);
  sqrt_inv.apply(wt, out.data);
  return out;
}

}  // namespace evowave
