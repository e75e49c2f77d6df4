#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "evowave/errors.hpp"

namespace evowave {

inline constexpr long kDenseCapDefault = 5000;

/// Matrix-free linear map with exact adjoint access. Operators are immutable
/// after construction and safe to share across threads; apply and
/// apply_adjoint may run concurrently on distinct output buffers.
class LinearOperator {
 public:
  using Apply = std::function<void(std::span<const double>, std::span<double>)>;

  LinearOperator() = default;
  LinearOperator(long domain_dim, long codomain_dim, Apply forward, Apply adjoint);

  long domain_dim() const { return domain_; }
  long codomain_dim() const { return codomain_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> apply_adjoint(const std::vector<double>& y) const;

  LinearOperator transpose() const;

 private:
  long domain_ = 0;
  long codomain_ = 0;
  Apply forward_;
  Apply adjoint_;
};

LinearOperator identity_operator(long n);
LinearOperator zero_operator(long domain_dim, long codomain_dim);
LinearOperator diagonal_operator(std::vector<double> diag);

/// x -> a(b(x))
LinearOperator compose(LinearOperator a, LinearOperator b);
LinearOperator scale(double alpha, LinearOperator a);
LinearOperator add(LinearOperator a, LinearOperator b);
LinearOperator subtract(LinearOperator a, LinearOperator b);
/// Same domain, stacked codomains: x -> [top(x); bottom(x)].
LinearOperator vstack(LinearOperator top, LinearOperator bottom);

/// Row-major dense assembly by unit-vector applies; refuses operators whose
/// larger side exceeds `cap` unknowns.
std::vector<double> to_dense(const LinearOperator& op, long cap = kDenseCapDefault);

struct ProbeReport {
  double max_defect = 0.0;
  int trials = 0;
  double tol = 0.0;
  bool pass = false;
};

/// Randomized adjoint-consistency probe with relative defect
/// |<Ax,y> - <x,A*y>| / (|Ax||y| + |x||A*y| + eps).
ProbeReport adjoint_check(const LinearOperator& op, int trials, double tol,
                          std::uint64_t seed);

/// Randomized skew probe on a square operator: |<x,Ax>| / (|x||Ax| + eps).
ProbeReport skew_check(const LinearOperator& op, int trials, double tol,
                       std::uint64_t seed);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
std::vector<double> random_vector(long n, std::mt19937_64& rng);

}  // namespace evowave
