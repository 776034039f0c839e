#pragma once

#include <functional>

#include "algebra.hpp"
#include "common.hpp"

namespace denmet {

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // unitary, columns
};

/// Cyclic Jacobi sweeps on a Hermitian matrix. Converges when the
/// off-diagonal Frobenius mass drops below tol * max(1, ||A||_F);
/// more than 100 sweeps is a hard error. The input must be Hermitian
/// within tol relative Frobenius gap.
EigenDecomposition hermitian_eig(const Matrix& a, double tol = tol::eig_convergence);

/// Largest singular value, sqrt(lambda_max(a* a)).
double operator_norm(const Matrix& a);

struct FunctionDomain {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Functional calculus V f(diag) V* per block for self-adjoint a. Eigenvalues
/// within clamp_tol * max(1, ||a||) of the domain are clamped onto it;
/// anything farther out is a domain error.
Element matrix_function(const Element& a, const std::function<double(double)>& f,
                        FunctionDomain dom, double clamp_tol = tol::positivity);

/// Unique positive square root of a positive element.
Element matrix_sqrt(const Element& a);

/// |a| = sqrt(a* a); defined for every element.
Element matrix_abs(const Element& a);

}  // namespace denmet
