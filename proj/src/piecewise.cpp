#include "piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace denmet {

namespace {

// 15-point Gauss-Legendre on [-1, 1]
constexpr double kGaussNodes[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601701,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kGaussWeights[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

}  // namespace

void Polynomial::trim() {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
}

double Polynomial::eval(double x) const {
  double v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
  return v;
}

Polynomial Polynomial::derivative() const {
  if (coeffs.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs.size() - 1);
  for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs.size() + 1, 0.0);
  for (size_t i = 0; i < coeffs.size(); ++i) a[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c(a.coeffs);
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<double> polynomial_roots_in(const Polynomial& p, double lo, double hi) {
  std::vector<double> roots;
  const int deg = p.degree();
  if (deg <= 0) return roots;  // constant: either no roots or a whole interval of them
  if (deg == 1) {
    const double r = -p.coeffs[0] / p.coeffs[1];
    if (r >= lo - 1e-14 && r <= hi + 1e-14) roots.push_back(std::clamp(r, lo, hi));
    return roots;
  }
  std::vector<double> marks = polynomial_roots_in(p.derivative(), lo, hi);
  marks.push_back(lo);
  marks.push_back(hi);
  std::sort(marks.begin(), marks.end());
  for (size_t i = 0; i + 1 < marks.size(); ++i) {
    double a = marks[i], b = marks[i + 1];
    if (b - a < 1e-15) continue;
    double fa = p.eval(a), fb = p.eval(b);
    if (fa == 0.0) roots.push_back(a);
    if (fa * fb > 0.0) continue;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      const double fm = p.eval(m);
      if (fa * fm <= 0.0) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  // endpoint zero of the last span
  if (p.eval(hi) == 0.0) roots.push_back(hi);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              roots.end());
  return roots;
}

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints,
                                     std::vector<Polynomial> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2 || pieces_.size() + 1 != breakpoints_.size())
    fail(errc::bad_argument, "PiecewiseFunction: need k+1 breakpoints for k pieces");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    fail(errc::bad_argument, "PiecewiseFunction: domain must be exactly [0, 1]");
  for (size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      fail(errc::bad_argument, "PiecewiseFunction: breakpoints must increase strictly");
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double x = breakpoints_[i + 1];
    const double left = pieces_[i].eval(x);
    const double right = pieces_[i + 1].eval(x);
    if (std::abs(left - right) > 1e-12 * std::max({1.0, std::abs(left), std::abs(right)}))
      fail(errc::domain, "PiecewiseFunction: jump of " + format_sig(left - right) +
                             " at breakpoint " + format_sig(x));
  }
}

PiecewiseFunction PiecewiseFunction::constant(double value) {
  return PiecewiseFunction({0.0, 1.0}, {Polynomial{value}});
}

PiecewiseFunction PiecewiseFunction::from_polynomial(Polynomial p) {
  return PiecewiseFunction({0.0, 1.0}, {std::move(p)});
}

double PiecewiseFunction::eval(double x) const {
  if (x < 0.0 || x > 1.0) fail(errc::domain, "PiecewiseFunction::eval: x outside [0, 1]");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  size_t idx = static_cast<size_t>(it - breakpoints_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  if (idx >= pieces_.size()) idx = pieces_.size() - 1;  // x == 1
  return pieces_[idx].eval(x);
}

double PiecewiseFunction::min_value() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const double lo = breakpoints_[i], hi = breakpoints_[i + 1];
    best = std::min({best, pieces_[i].eval(lo), pieces_[i].eval(hi)});
    for (double r : polynomial_roots_in(pieces_[i].derivative(), lo, hi))
      best = std::min(best, pieces_[i].eval(r));
  }
  return best;
}

double PiecewiseFunction::max_abs() const {
  double best = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const double lo = breakpoints_[i], hi = breakpoints_[i + 1];
    best = std::max({best, std::abs(pieces_[i].eval(lo)), std::abs(pieces_[i].eval(hi))});
    for (double r : polynomial_roots_in(pieces_[i].derivative(), lo, hi))
      best = std::max(best, std::abs(pieces_[i].eval(r)));
  }
  return best;
}

namespace {

PiecewiseFunction merge(const PiecewiseFunction& f, const PiecewiseFunction& g,
                        Polynomial (*op)(const Polynomial&, const Polynomial&)) {
  std::vector<double> bp;
  bp.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(bp));
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           bp.end());
  std::vector<Polynomial> pieces;
  pieces.reserve(bp.size() - 1);
  auto piece_at = [](const PiecewiseFunction& fn, double x) -> const Polynomial& {
    const auto& b = fn.breakpoints();
    size_t idx = static_cast<size_t>(std::upper_bound(b.begin(), b.end(), x) - b.begin());
    idx = idx == 0 ? 0 : idx - 1;
    if (idx >= fn.pieces().size()) idx = fn.pieces().size() - 1;
    return fn.pieces()[idx];
  };
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    pieces.push_back(op(piece_at(f, mid), piece_at(g, mid)));
  }
  return PiecewiseFunction(std::move(bp), std::move(pieces));
}

Polynomial padd(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial psub(const Polynomial& a, const Polynomial& b) { return a - b; }
Polynomial pmul(const Polynomial& a, const Polynomial& b) { return a * b; }

}  // namespace

PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return merge(f, g, padd);
}
PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return merge(f, g, psub);
}
PiecewiseFunction operator*(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return merge(f, g, pmul);
}

PiecewiseFunction ramp_family(int n) {
  if (n < 1) fail(errc::bad_argument, "ramp_family: n must be >= 1");
  const double dn = static_cast<double>(n);
  const double left = 1.0 / (2.0 * dn);
  const double right = 1.0 - left;
  const Polynomial up{0.0, 2.0 * dn};                 // 2nx
  const Polynomial plateau{1.0};                      // 1
  const Polynomial down{2.0 - 2.0 * dn, 2.0 * dn};    // 2nx - 2n + 2
  if (left == right)  // n = 1: the plateau is empty
    return PiecewiseFunction({0.0, left, 1.0}, {up, down});
  return PiecewiseFunction({0.0, left, right, 1.0}, {up, plateau, down});
}

double lebesgue_trace(const PiecewiseFunction& f) {
  double total = 0.0;
  for (size_t i = 0; i < f.pieces().size(); ++i) {
    const Polynomial anti = f.pieces()[i].antiderivative();
    total += anti.eval(f.breakpoints()[i + 1]) - anti.eval(f.breakpoints()[i]);
  }
  return total;
}

double uniform_norm_distance(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return (f - g).max_abs();
}

namespace {

double sqrt_clamped(const Polynomial& p, double x) { return std::sqrt(std::max(0.0, p.eval(x))); }

double gauss15(const Polynomial& p, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (int i = 0; i < 15; ++i) sum += kGaussWeights[i] * sqrt_clamped(p, mid + half * kGaussNodes[i]);
  return half * sum;
}

double adaptive_sqrt_integral(const Polynomial& p, double lo, double hi, double target,
                              int& budget) {
  const double whole = gauss15(p, lo, hi);
  const double mid = 0.5 * (lo + hi);
  const double split = gauss15(p, lo, mid) + gauss15(p, mid, hi);
  // the estimate gap understates the residual error near sqrt singularities,
  // so accept an order below the local budget
  if (std::abs(whole - split) <= 0.1 * target || hi - lo < 1e-14) return split;
  if ((budget -= 2) <= 0)
    fail(errc::numeric, "bures_distance_functions: quadrature interval cap exceeded");
  return adaptive_sqrt_integral(p, lo, mid, 0.5 * target, budget) +
         adaptive_sqrt_integral(p, mid, hi, 0.5 * target, budget);
}

// exact antiderivative of sqrt(c0 + c1 x): (2 / (3 c1)) (c0 + c1 x)^{3/2}
double exact_sqrt_linear_integral(const Polynomial& p, double lo, double hi) {
  const double c0 = p.coeffs.size() > 0 ? p.coeffs[0] : 0.0;
  const double c1 = p.coeffs.size() > 1 ? p.coeffs[1] : 0.0;
  auto anti = [&](double x) {
    const double v = std::max(0.0, c0 + c1 * x);
    return (2.0 / (3.0 * c1)) * v * std::sqrt(v);
  };
  return anti(hi) - anti(lo);
}

}  // namespace

double bures_distance_functions(const PiecewiseFunction& f, const PiecewiseFunction& g,
                                const QuadratureSpec& quad) {
  if (f.min_value() < -1e-12 || g.min_value() < -1e-12)
    fail(errc::domain, "bures_distance_functions: inputs must be nonnegative");
  if (f.breakpoints() == g.breakpoints() && f.pieces().size() == g.pieces().size()) {
    bool identical = true;
    for (size_t i = 0; i < f.pieces().size() && identical; ++i)
      identical = f.pieces()[i].coeffs == g.pieces()[i].coeffs;
    if (identical && std::abs(lebesgue_trace(f) - 1.0) <= tol::bures_clamp) return 0.0;
  }
  const PiecewiseFunction prod = f * g;
  int budget = quad.max_intervals;
  double integral = 0.0;
  for (size_t i = 0; i < prod.pieces().size(); ++i) {
    const double lo = prod.breakpoints()[i], hi = prod.breakpoints()[i + 1];
    const Polynomial& p = prod.pieces()[i];
    if (!quad.force_adaptive && p.degree() <= 0) {
      integral += std::sqrt(std::max(0.0, p.coeffs[0])) * (hi - lo);
    } else if (!quad.force_adaptive && p.degree() == 1) {
      integral += exact_sqrt_linear_integral(p, lo, hi);
    } else {
      integral += adaptive_sqrt_integral(p, lo, hi, quad.target_abs_error * (hi - lo), budget);
    }
  }
  if (integral > 1.0 + tol::bures_clamp)
    fail(errc::numeric, "bures_distance_functions: integral " + format_sig(integral) +
                            " exceeds 1, inputs are not trace-normalized");
  integral = std::clamp(integral, 0.0, 1.0);
  return std::sqrt(1.0 - integral);
}

double ramp_bures_gap(int n) {
  if (n < 1) fail(errc::bad_argument, "ramp_bures_gap: n must be >= 1");
  return std::sqrt((3.0 - 2.0 * std::sqrt(2.0)) / (3.0 * static_cast<double>(n)));
}

std::vector<FinenessRow> strict_fineness_table(int count) {
  if (count < 1) fail(errc::bad_argument, "strict_fineness_table: need at least one row");
  const PiecewiseFunction one = PiecewiseFunction::constant(1.0);
  std::vector<FinenessRow> rows;
  rows.reserve(count);
  for (int n = 1; n <= count; ++n) {
    const PiecewiseFunction fn = ramp_family(n);
    FinenessRow row;
    row.n = n;
    row.bures = bures_distance_functions(fn, one);
    row.uniform = uniform_norm_distance(fn, one);
    rows.push_back(row);
  }
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i + 1].bures < rows[i].bures))
      fail(errc::numeric, "strict_fineness_table: Bures column not strictly decreasing at n = " +
                              std::to_string(rows[i + 1].n));
  if (rows.back().bures > ramp_bures_gap(count) + 1e-9)
    fail(errc::numeric, "strict_fineness_table: final Bures value above the closed form");
  for (const FinenessRow& row : rows)
    if (row.uniform != 1.0)
      fail(errc::numeric, "strict_fineness_table: uniform distance " + format_sig(row.uniform) +
                              " != 1 at n = " + std::to_string(row.n));
  return rows;
}

std::string fineness_table_csv(const std::vector<FinenessRow>& rows) {
  std::string out = "n,bures,uniform\n";
  for (const FinenessRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_sig(row.bures);
    out += ',';
    out += format_sig(row.uniform);
    out += '\n';
  }
  return out;
}

std::string ramp_samples_csv(int grid_points) {
  if (grid_points < 2) fail(errc::bad_argument, "ramp_samples_csv: need at least 2 grid points");
  const PiecewiseFunction f1 = ramp_family(1), f2 = ramp_family(2), f3 = ramp_family(3);
  std::string out = "x,f1,f2,f3\n";
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    out += format_sig(x);
    out += ',';
    out += format_sig(f1.eval(x));
    out += ',';
    out += format_sig(f2.eval(x));
    out += ',';
    out += format_sig(f3.eval(x));
    out += '\n';
  }
  return out;
}

}  // namespace denmet
