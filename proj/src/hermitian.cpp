#include "hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace denmet {

namespace {

double off_diagonal_mass(const Matrix& m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing m(p, q). Returns the unitary update
// applied as m <- g* m g with g = I except
//   g(p,p) = c, g(p,q) = s, g(q,p) = -conj(s), g(q,q) = c.
void rotate(Matrix& m, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const cplx apq = m(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;
  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (theta >= 0.0)
    t = 1.0 / (theta + std::sqrt(1.0 + theta * theta));
  else
    t = -1.0 / (-theta + std::sqrt(1.0 + theta * theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cplx s = (t * c) * phase;

  const Eigen::VectorXcd mp = m.col(p), mq = m.col(q);
  m.col(p) = c * mp - std::conj(s) * mq;
  m.col(q) = s * mp + c * mq;
  const Eigen::RowVectorXcd rp = m.row(p), rq = m.row(q);
  m.row(p) = c * rp - s * rq;
  m.row(q) = std::conj(s) * rp + c * rq;

  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = m(p, p).real();
  m(q, q) = m(q, q).real();

  const Eigen::VectorXcd vp = v.col(p), vq = v.col(q);
  v.col(p) = c * vp - std::conj(s) * vq;
  v.col(q) = s * vp + c * vq;
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) fail(errc::bad_argument, "hermitian_eig: matrix not square");
  const Eigen::Index n = a.rows();
  const double scale = std::max(1.0, a.norm());
  const double gap = (a - a.adjoint()).norm();
  if (gap > tol * scale)
    fail(errc::not_hermitian,
         "hermitian_eig: input not Hermitian, ||A - A*|| = " + format_sig(gap));

  Matrix m = 0.5 * (a + a.adjoint());
  Matrix v = Matrix::Identity(n, n);

  if (n > 1) {
    const double target = tol * scale;
    const double skip = target / (4.0 * static_cast<double>(n) * static_cast<double>(n));
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_mass(m) <= target) break;
      for (Eigen::Index p = 0; p < n - 1; ++p)
        for (Eigen::Index q = p + 1; q < n; ++q)
          if (std::abs(m(p, q)) > skip) rotate(m, v, p, q);
    }
    if (sweep == kMaxSweeps && off_diagonal_mass(m) > target)
      fail(errc::no_convergence, "hermitian_eig: no convergence in 100 Jacobi sweeps");
  }

  EigenDecomposition dec;
  dec.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) dec.eigenvalues[i] = m(i, i).real();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return dec.eigenvalues[i] < dec.eigenvalues[j];
  });

  Eigen::VectorXd sorted(n);
  Matrix vs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted[i] = dec.eigenvalues[order[i]];
    vs.col(i) = v.col(order[i]);
  }
  dec.eigenvalues = std::move(sorted);
  dec.eigenvectors = std::move(vs);
  return dec;
}

double operator_norm(const Matrix& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Matrix gram = a.adjoint() * a;
  // work at unit Frobenius scale so accuracy stays relative for tiny inputs
  const double s = gram.norm();
  if (s == 0.0 || !std::isfinite(s)) return std::isfinite(s) ? 0.0 : s;
  gram /= s;
  const EigenDecomposition dec = hermitian_eig(gram);
  const double top = dec.eigenvalues[dec.eigenvalues.size() - 1];
  return std::sqrt(std::max(0.0, top * s));
}

Element matrix_function(const Element& a, const std::function<double(double)>& f,
                        FunctionDomain dom, double clamp_tol) {
  if (!a.is_hermitian())
    fail(errc::not_hermitian, "matrix_function: element not self-adjoint, gap = " +
                                  format_sig(a.hermiticity_gap()));
  const double scale = std::max(1.0, cstar_norm(a));
  const double slack = clamp_tol * scale;

  std::vector<Matrix> blocks;
  blocks.reserve(a.block_count());
  for (int k = 0; k < a.block_count(); ++k) {
    EigenDecomposition dec = hermitian_eig(a.block(k), tol::hermitian);
    Eigen::VectorXd fv(dec.eigenvalues.size());
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
      double lam = dec.eigenvalues[i];
      if (lam < dom.lo - slack || lam > dom.hi + slack)
        fail(errc::domain, "matrix_function: eigenvalue " + format_sig(lam) +
                               " outside domain [" + format_sig(dom.lo) + ", " +
                               format_sig(dom.hi) + "]");
      lam = std::clamp(lam, dom.lo, dom.hi);
      fv[i] = f(lam);
    }
    blocks.push_back(dec.eigenvectors * fv.cast<cplx>().asDiagonal() *
                     dec.eigenvectors.adjoint());
  }
  return Element(a.shape(), std::move(blocks));
}

Element matrix_sqrt(const Element& a) {
  return matrix_function(
      a, [](double x) { return std::sqrt(x); }, FunctionDomain{0.0, std::numeric_limits<double>::infinity()});
}

Element matrix_abs(const Element& a) { return matrix_sqrt(a.adjoint() * a); }

}  // namespace denmet
