#include "evowave/linear_operator.hpp"

#include <cmath>
#include <utility>

namespace evowave {

LinearOperator::LinearOperator(long domain_dim, long codomain_dim, Apply forward,
                               Apply adjoint)
    : domain_(domain_dim),
      codomain_(codomain_dim),
      forward_(std::move(forward)),
      adjoint_(std::move(adjoint)) {
  if (domain_ < 0 || codomain_ < 0)
    throw DimensionError("operator: negative dimension");
}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<long>(x.size()) != domain_ ||
      static_cast<long>(y.size()) != codomain_)
    throw DimensionError("operator apply: size mismatch");
  forward_(x, y);
}

void LinearOperator::apply_adjoint(std::span<const double> y,
                                   std::span<double> x) const {
  if (static_cast<long>(y.size()) != codomain_ ||
      static_cast<long>(x.size()) != domain_)
    throw DimensionError("operator apply_adjoint: size mismatch");
  adjoint_(y, x);
}

std::vector<double> LinearOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<size_t>(codomain_));
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

std::vector<double> LinearOperator::apply_adjoint(const std::vector<double>& y) const {
  std::vector<double> x(static_cast<size_t>(domain_));
  apply_adjoint(std::span<const double>(y), std::span<double>(x));
  return x;
}

LinearOperator LinearOperator::transpose() const {
  return LinearOperator(codomain_, domain_, adjoint_, forward_);
}

LinearOperator identity_operator(long n) {
  auto copy = [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  };
  return LinearOperator(n, n, copy, copy);
}

LinearOperator zero_operator(long domain_dim, long codomain_dim) {
  auto zero = [](std::span<const double>, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
  };
  return LinearOperator(domain_dim, codomain_dim, zero, zero);
}

LinearOperator diagonal_operator(std::vector<double> diag) {
  const long n = static_cast<long>(diag.size());
  auto mul = [d = std::move(diag)](std::span<const double> x, std::span<double> y) {
    for (size_t i = 0; i < d.size(); ++i) y[i] = d[i] * x[i];
  };
  return LinearOperator(n, n, mul, mul);
}

LinearOperator compose(LinearOperator a, LinearOperator b) {
  if (a.domain_dim() != b.codomain_dim())
    throw DimensionError("compose: inner dimensions do not match");
  const long mid = b.codomain_dim();
  auto fwd = [a, b, mid](std::span<const double> x, std::span<double> y) {
    std::vector<double> t(static_cast<size_t>(mid));
    b.apply(x, t);
    a.apply(t, y);
  };
  auto adj = [a, b, mid](std::span<const double> y, std::span<double> x) {
    std::vector<double> t(static_cast<size_t>(mid));
    a.apply_adjoint(y, t);
    b.apply_adjoint(t, x);
  };
  return LinearOperator(b.domain_dim(), a.codomain_dim(), fwd, adj);
}

LinearOperator scale(double alpha, LinearOperator a) {
  auto fwd = [alpha, a](std::span<const double> x, std::span<double> y) {
    a.apply(x, y);
    for (auto& v : y) v *= alpha;
  };
  auto adj = [alpha, a](std::span<const double> y, std::span<double> x) {
    a.apply_adjoint(y, x);
    for (auto& v : x) v *= alpha;
  };
  return LinearOperator(a.domain_dim(), a.codomain_dim(), fwd, adj);
}

LinearOperator add(LinearOperator a, LinearOperator b) {
  if (a.domain_dim() != b.domain_dim() || a.codomain_dim() != b.codomain_dim())
    throw DimensionError("add: shape mismatch");
  auto fwd = [a, b](std::span<const double> x, std::span<double> y) {
    std::vector<double> t(y.size());
    a.apply(x, y);
    b.apply(x, t);
    for (size_t i = 0; i < t.size(); ++i) y[i] += t[i];
  };
  auto adj = [a, b](std::span<const double> y, std::span<double> x) {
    std::vector<double> t(x.size());
    a.apply_adjoint(y, x);
    b.apply_adjoint(y, t);
    for (size_t i = 0; i < t.size(); ++i) x[i] += t[i];
  };
  return LinearOperator(a.domain_dim(), a.codomain_dim(), fwd, adj);
}

LinearOperator subtract(LinearOperator a, LinearOperator b) {
  return add(std::move(a), scale(-1.0, std::move(b)));
}

LinearOperator vstack(LinearOperator top, LinearOperator bottom) {
  if (top.domain_dim() != bottom.domain_dim())
    throw DimensionError("vstack: domain mismatch");
  const long n = top.domain_dim();
  const long m0 = top.codomain_dim();
  const long m1 = bottom.codomain_dim();
  auto fwd = [top, bottom, m0](std::span<const double> x, std::span<double> y) {
    top.apply(x, y.first(static_cast<size_t>(m0)));
    bottom.apply(x, y.subspan(static_cast<size_t>(m0)));
  };
  auto adj = [top, bottom, n, m0](std::span<const double> y, std::span<double> x) {
    top.apply_adjoint(y.first(static_cast<size_t>(m0)), x);
    std::vector<double> t(static_cast<size_t>(n));
    bottom.apply_adjoint(y.subspan(static_cast<size_t>(m0)), t);
    for (size_t i = 0; i < t.size(); ++i) x[i] += t[i];
  };
  return LinearOperator(n, m0 + m1, fwd, adj);
}

std::vector<double> to_dense(const LinearOperator& op, long cap) {
  const long rows = op.codomain_dim();
  const long cols = op.domain_dim();
  if (rows > cap || cols > cap)
    throw CapError("to_dense: operator exceeds the dense unknown cap");
  std::vector<double> dense(static_cast<size_t>(rows * cols));
  std::vector<double> e(static_cast<size_t>(cols), 0.0);
  std::vector<double> y(static_cast<size_t>(rows));
  for (long j = 0; j < cols; ++j) {
    e[static_cast<size_t>(j)] = 1.0;
    op.apply(e, y);
    e[static_cast<size_t>(j)] = 0.0;
    for (long i = 0; i < rows; ++i)
      dense[static_cast<size_t>(i * cols + j)] = y[static_cast<size_t>(i)];
  }
  return dense;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> random_vector(long n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

ProbeReport adjoint_check(const LinearOperator& op, int trials, double tol,
                          std::uint64_t seed) {
  if (trials < 1) throw DimensionError("adjoint_check: trials must be >= 1");
  if (!(tol > 0.0)) throw DimensionError("adjoint_check: tol must be positive");
  std::mt19937_64 rng(seed);
  ProbeReport r;
  r.trials = trials;
  r.tol = tol;
  std::vector<double> ax(static_cast<size_t>(op.codomain_dim()));
  std::vector<double> aty(static_cast<size_t>(op.domain_dim()));
  for (int k = 0; k < trials; ++k) {
    auto x = random_vector(op.domain_dim(), rng);
    auto y = random_vector(op.codomain_dim(), rng);
    op.apply(x, ax);
    op.apply_adjoint(y, aty);
    const double lhs = dot(ax, y);
    const double rhs = dot(x, aty);
    const double denom = norm2(ax) * norm2(y) + norm2(x) * norm2(aty) + 1e-300;
    r.max_defect = std::max(r.max_defect, std::abs(lhs - rhs) / denom);
  }
  r.pass = r.max_defect <= tol;
  return r;
}

ProbeReport skew_check(const LinearOperator& op, int trials, double tol,
                       std::uint64_t seed) {
  if (op.domain_dim() != op.codomain_dim())
    throw DimensionError("skew_check: operator must be square");
  if (trials < 1) throw DimensionError("skew_check: trials must be >= 1");
  if (!(tol > 0.0)) throw DimensionError("skew_check: tol must be positive");
  std::mt19937_64 rng(seed);
  ProbeReport r;
  r.trials = trials;
  r.tol = tol;
  std::vector<double> ax(static_cast<size_t>(op.codomain_dim()));
  for (int k = 0; k < trials; ++k) {
    auto x = random_vector(op.domain_dim(), rng);
    op.apply(x, ax);
    const double denom = norm2(x) * norm2(ax) + 1e-300;
    r.max_defect = std::max(r.max_defect, std::abs(dot(x, ax)) / denom);
  }
  r.pass = r.max_defect <= tol;
  return r;
}

}  // namespace evowave
