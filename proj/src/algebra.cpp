#include "algebra.hpp"

#include <algorithm>
#include <cmath>

#include "hermitian.hpp"

namespace denmet {

AlgebraShape::AlgebraShape(std::vector<int> dims) : block_dims(std::move(dims)) {
  if (block_dims.empty()) fail(errc::bad_argument, "AlgebraShape: empty block list");
  for (int d : block_dims)
    if (d < 1) fail(errc::bad_argument, "AlgebraShape: block dimension must be >= 1");
}

long AlgebraShape::complex_dim() const {
  long total = 0;
  for (int d : block_dims) total += static_cast<long>(d) * d;
  return total;
}

bool AlgebraShape::commutative() const {
  return std::all_of(block_dims.begin(), block_dims.end(), [](int d) { return d == 1; });
}

std::string AlgebraShape::describe() const {
  std::string s = "(";
  for (size_t i = 0; i < block_dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(block_dims[i]);
  }
  return s + ")";
}

Element::Element(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.block_count())
    fail(errc::shape_mismatch, "Element: block count does not match shape");
  for (int k = 0; k < shape_.block_count(); ++k) {
    const int d = shape_.block_dims[k];
    if (blocks_[k].rows() != d || blocks_[k].cols() != d)
      fail(errc::shape_mismatch, "Element: block " + std::to_string(k) + " is not " +
                                     std::to_string(d) + "x" + std::to_string(d));
  }
}

Element Element::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(shape.block_count());
  for (int d : shape.block_dims) blocks.push_back(Matrix::Zero(d, d));
  return Element(shape, std::move(blocks));
}

Element Element::identity(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(shape.block_count());
  for (int d : shape.block_dims) blocks.push_back(Matrix::Identity(d, d));
  return Element(shape, std::move(blocks));
}

Element Element::diagonal(const AlgebraShape& shape, const std::vector<double>& entries) {
  long total = 0;
  for (int d : shape.block_dims) total += d;
  if (static_cast<long>(entries.size()) != total)
    fail(errc::shape_mismatch, "Element::diagonal: expected " + std::to_string(total) +
                                   " entries, got " + std::to_string(entries.size()));
  std::vector<Matrix> blocks;
  blocks.reserve(shape.block_count());
  size_t pos = 0;
  for (int d : shape.block_dims) {
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = entries[pos++];
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

Element Element::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(b.adjoint());
  return Element(shape_, std::move(blocks));
}

Element Element::scaled(cplx alpha) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(alpha * b);
  return Element(shape_, std::move(blocks));
}

double Element::frobenius_norm() const {
  double sum = 0.0;
  for (const Matrix& b : blocks_) sum += b.squaredNorm();
  return std::sqrt(sum);
}

double Element::hermiticity_gap() const {
  double sum = 0.0;
  for (const Matrix& b : blocks_) sum += (b - b.adjoint()).squaredNorm();
  return std::sqrt(sum);
}

bool Element::is_hermitian(double rel_tol) const {
  return hermiticity_gap() <= rel_tol * std::max(1.0, frobenius_norm());
}

std::vector<double> Element::commutative_values() const {
  if (!shape_.commutative())
    fail(errc::bad_argument, "commutative_values: shape " + shape_.describe() +
                                 " has a block larger than 1x1");
  std::vector<double> v;
  v.reserve(blocks_.size());
  for (const Matrix& b : blocks_) v.push_back(b(0, 0).real());
  return v;
}

uint64_t Element::digest() const {
  uint64_t h = 1469598103934665603ull;
  for (const Matrix& b : blocks_)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const cplx z = b(i, j);
        const double re = z.real(), im = z.imag();
        h = fnv1a64(&re, sizeof re, h);
        h = fnv1a64(&im, sizeof im, h);
      }
  return h;
}

void require_same_shape(const Element& a, const Element& b) {
  if (a.shape() != b.shape())
    fail(errc::shape_mismatch,
         "shape mismatch: " + a.shape().describe() + " vs " + b.shape().describe());
}

Element operator+(const Element& a, const Element& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.block_count());
  for (int k = 0; k < a.block_count(); ++k) blocks.push_back(a.block(k) + b.block(k));
  return Element(a.shape(), std::move(blocks));
}

Element operator-(const Element& a, const Element& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.block_count());
  for (int k = 0; k < a.block_count(); ++k) blocks.push_back(a.block(k) - b.block(k));
  return Element(a.shape(), std::move(blocks));
}

Element operator*(const Element& a, const Element& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.block_count());
  for (int k = 0; k < a.block_count(); ++k) blocks.push_back(a.block(k) * b.block(k));
  return Element(a.shape(), std::move(blocks));
}

Trace::Trace(AlgebraShape s, std::vector<double> w) : shape(std::move(s)), weights(std::move(w)) {
  if (static_cast<int>(weights.size()) != shape.block_count())
    fail(errc::shape_mismatch, "Trace: weight count does not match shape");
  for (double x : weights)
    if (!(x > 0.0)) fail(errc::bad_argument, "Trace: weights must be strictly positive");
}

Trace Trace::uniform(const AlgebraShape& shape, double weight) {
  return Trace(shape, std::vector<double>(shape.block_count(), weight));
}

double Trace::min_weight() const { return *std::min_element(weights.begin(), weights.end()); }

cplx trace_eval(const Trace& tau, const Element& a) {
  if (tau.shape != a.shape())
    fail(errc::shape_mismatch, "trace_eval: trace shape " + tau.shape.describe() +
                                   " vs element shape " + a.shape().describe());
  cplx sum = 0.0;
  for (int k = 0; k < a.block_count(); ++k) sum += tau.weights[k] * a.block(k).trace();
  return sum;
}

double trace_eval_real(const Trace& tau, const Element& a) { return trace_eval(tau, a).real(); }

double tau_norm(const Trace& tau, const Element& a) {
  const double v = trace_eval(tau, a.adjoint() * a).real();
  return std::sqrt(std::max(0.0, v));
}

double cstar_norm(const Element& a) {
  double best = 0.0;
  for (const Matrix& b : a.blocks()) best = std::max(best, operator_norm(b));
  return best;
}

double cstar_distance(const Element& a, const Element& b) { return cstar_norm(a - b); }

PositivityCertificate check_positive(const Element& a, double tol) {
  PositivityCertificate cert;
  cert.hermiticity_gap = a.hermiticity_gap();
  const double scale = std::max(1.0, cstar_norm(a));
  if (cert.hermiticity_gap > tol * scale) {
    cert.positive = false;
    cert.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return cert;
  }
  double min_eig = std::numeric_limits<double>::infinity();
  for (const Matrix& b : a.blocks()) {
    const Matrix sym = 0.5 * (b + b.adjoint());
    const EigenDecomposition dec = hermitian_eig(sym);
    min_eig = std::min(min_eig, dec.eigenvalues[0]);
  }
  cert.min_eigenvalue = min_eig;
  cert.positive = min_eig >= -tol * scale;
  return cert;
}

DensityElement normalize_to_density(const Trace& tau, const Element& a) {
  if (tau.shape != a.shape())
    fail(errc::shape_mismatch, "normalize_to_density: shape mismatch");
  const PositivityCertificate cert = check_positive(a);
  if (!cert.positive)
    fail(errc::not_positive, "normalize_to_density: element not positive, min eigenvalue " +
                                 format_sig(cert.min_eigenvalue));

  // clamp eigenvalues in [-tol, 0) to zero, then renormalize
  Element clamped = a;
  if (cert.min_eigenvalue < 0.0) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.block_count());
    for (const Matrix& b : a.blocks()) {
      const Matrix sym = 0.5 * (b + b.adjoint());
      const EigenDecomposition dec = hermitian_eig(sym);
      Eigen::VectorXd lam = dec.eigenvalues.cwiseMax(0.0);
      blocks.push_back(dec.eigenvectors * lam.cast<cplx>().asDiagonal() *
                       dec.eigenvectors.adjoint());
    }
    clamped = Element(a.shape(), std::move(blocks));
  }

  const double t = trace_eval(tau, clamped).real();
  if (!(t > tol::trace_one))
    fail(errc::degenerate_input,
         "normalize_to_density: trace " + format_sig(t) + " too close to zero");
  Element unit = clamped.scaled(1.0 / t);

  const double resid = std::abs(trace_eval(tau, unit).real() - 1.0);
  if (resid > tol::trace_one)
    fail(errc::numeric, "normalize_to_density: renormalized trace off by " + format_sig(resid));
  return DensityElement(std::move(unit), tau);
}

Element sample_element(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> blocks;
  blocks.reserve(shape.block_count());
  for (int d : shape.block_dims) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.gaussian_complex();
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

Element sample_hermitian(const AlgebraShape& shape, Rng& rng) {
  const Element g = sample_element(shape, rng);
  return 0.5 * (g + g.adjoint());
}

DensityElement sample_density(const Trace& tau, uint64_t seed) {
  Rng rng(seed);
  const Element b = sample_element(tau.shape, rng);
  return normalize_to_density(tau, b.adjoint() * b);
}

}  // namespace denmet
