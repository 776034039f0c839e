#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace denmet {

/// Real polynomial, coefficients by ascending power.
struct Polynomial {
  std::vector<double> coeffs;

  Polynomial() : coeffs{0.0} {}
  Polynomial(std::initializer_list<double> c) : coeffs(c) { trim(); }
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double x) const;
  Polynomial derivative() const;
  Polynomial antiderivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

private:
  void trim();
};

/// Roots of p inside [lo, hi], found by splitting at the critical points of p
/// and bisecting each monotone span.
std::vector<double> polynomial_roots_in(const Polynomial& p, double lo, double hi);

/// Continuous piecewise polynomial on [0, 1]; intervals are left-closed.
class PiecewiseFunction {
public:
  PiecewiseFunction(std::vector<double> breakpoints, std::vector<Polynomial> pieces);

  static PiecewiseFunction constant(double value);
  static PiecewiseFunction from_polynomial(Polynomial p);  // one piece on [0, 1]

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }

  double eval(double x) const;
  double min_value() const;
  double max_abs() const;

  friend PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& g);
  friend PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& g);
  friend PiecewiseFunction operator*(const PiecewiseFunction& f, const PiecewiseFunction& g);

private:
  std::vector<double> breakpoints_;
  std::vector<Polynomial> pieces_;
};

/// The ramp family: 2nx up to 1 at x = 1/(2n), a plateau at 1, then a ramp
/// to 2 at x = 1. Unit Lebesgue integral for every n; the middle piece is
/// empty at n = 1.
PiecewiseFunction ramp_family(int n);

/// Lebesgue integral over [0, 1], exact per-piece antiderivatives.
double lebesgue_trace(const PiecewiseFunction& f);

/// sup-norm distance max_{[0,1]} |f - g|.
double uniform_norm_distance(const PiecewiseFunction& f, const PiecewiseFunction& g);

struct QuadratureSpec {
  double target_abs_error = 1e-10;
  int max_intervals = 100000;
  bool force_adaptive = false;  // skip the exact-antiderivative shortcut (testing)
};

/// sqrt(1 - integral of sqrt(f g)). Pieces of f*g that are constant or
/// linear integrate through exact antiderivatives; anything else goes
/// through adaptive 15-point quadrature.
double bures_distance_functions(const PiecewiseFunction& f, const PiecewiseFunction& g,
                                const QuadratureSpec& quad = {});

/// Closed-form Bures gap between ramp_family(n) and the constant 1.
double ramp_bures_gap(int n);

struct FinenessRow {
  int n = 0;
  double bures = 0.0;
  double uniform = 0.0;
};

/// Rows (n, d_bures(f_n, 1), d_uniform(f_n, 1)) for n = 1..N. Checks that
/// the Bures column decreases strictly toward zero while the uniform column
/// stays pinned at 1.
std::vector<FinenessRow> strict_fineness_table(int count);

/// CSV bodies; 12 significant digits.
std::string fineness_table_csv(const std::vector<FinenessRow>& rows);
std::string ramp_samples_csv(int grid_points);  // header x,f1,f2,f3

}  // namespace denmet
