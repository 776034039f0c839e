#pragma once

#include <initializer_list>
#include <vector>

#include "common.hpp"

namespace denmet {

/// A finite-dimensional C*-algebra given as a direct sum of full matrix
/// blocks M_{n_1} (+) ... (+) M_{n_K}. The commutative algebra C^n is the
/// shape (1, ..., 1).
struct AlgebraShape {
  std::vector<int> block_dims;

  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<int> dims);
  AlgebraShape(std::initializer_list<int> dims) : AlgebraShape(std::vector<int>(dims)) {}

  int block_count() const { return static_cast<int>(block_dims.size()); }
  long complex_dim() const;  // sum of n_k^2
  bool commutative() const;  // all blocks 1x1

  bool operator==(const AlgebraShape& o) const { return block_dims == o.block_dims; }
  bool operator!=(const AlgebraShape& o) const { return !(*this == o); }

  std::string describe() const;  // e.g. "(2,1)"
};

/// Element of the algebra: one dense complex matrix per block.
class Element {
public:
  Element() = default;
  Element(AlgebraShape shape, std::vector<Matrix> blocks);

  static Element zero(const AlgebraShape& shape);
  static Element identity(const AlgebraShape& shape);
  /// Block-diagonal element with the given scalar on every diagonal slot,
  /// one value per diagonal entry across all blocks (n_1 + ... + n_K values).
  static Element diagonal(const AlgebraShape& shape, const std::vector<double>& entries);

  const AlgebraShape& shape() const { return shape_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int k) const { return blocks_[k]; }
  Matrix& block(int k) { return blocks_[k]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Element adjoint() const;
  Element scaled(cplx alpha) const;

  double frobenius_norm() const;
  double hermiticity_gap() const;  // ||a - a*||_F
  bool is_hermitian(double rel_tol = tol::hermitian) const;

  /// Real parts of the 1x1 blocks; only valid on commutative shapes.
  std::vector<double> commutative_values() const;

  uint64_t digest() const;  // fnv over raw entry bytes, for report provenance

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);  // blockwise matrix product
  friend Element operator*(cplx alpha, const Element& a) { return a.scaled(alpha); }
  friend Element operator*(double alpha, const Element& a) { return a.scaled(alpha); }

private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

void require_same_shape(const Element& a, const Element& b);

/// Faithful trace: strictly positive weight per block,
/// tau(a) = sum_k w_k tr(a_k). Not necessarily of norm 1.
struct Trace {
  AlgebraShape shape;
  std::vector<double> weights;

  Trace() = default;
  Trace(AlgebraShape s, std::vector<double> w);
  static Trace uniform(const AlgebraShape& shape, double weight = 1.0);

  double min_weight() const;
};

cplx trace_eval(const Trace& tau, const Element& a);
double trace_eval_real(const Trace& tau, const Element& a);  // for self-adjoint a

/// ||a||_tau = sqrt(tau(a* a))
double tau_norm(const Trace& tau, const Element& a);

/// Operator norm: max over blocks of the largest singular value.
double cstar_norm(const Element& a);
double cstar_distance(const Element& a, const Element& b);

struct PositivityCertificate {
  bool positive = false;
  double min_eigenvalue = 0.0;
  double hermiticity_gap = 0.0;
};

/// a is positive iff it is Hermitian within tol and every blockwise
/// eigenvalue is >= -tol * max(1, ||a||).
PositivityCertificate check_positive(const Element& a, double tol = tol::positivity);

/// Positive element with tau(a) = 1. Construct via normalize_to_density.
class DensityElement {
public:
  const Element& element() const { return element_; }
  const Trace& trace() const { return trace_; }

  friend DensityElement normalize_to_density(const Trace& tau, const Element& a);

private:
  DensityElement(Element e, Trace t) : element_(std::move(e)), trace_(std::move(t)) {}
  Element element_;
  Trace trace_;
};

/// Scales a positive element to trace one. Eigenvalues in [-tol, 0) are
/// clamped to zero before renormalizing so downstream square roots stay real.
DensityElement normalize_to_density(const Trace& tau, const Element& a);

/// b*b / tau(b*b) for a Gaussian-random b; deterministic in the seed.
DensityElement sample_density(const Trace& tau, uint64_t seed);

/// Complex Gaussian entries (test-input generation).
Element sample_element(const AlgebraShape& shape, Rng& rng);
Element sample_hermitian(const AlgebraShape& shape, Rng& rng);

}  // namespace denmet
