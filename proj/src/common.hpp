#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace denmet {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class errc {
  bad_argument,
  shape_mismatch,
  not_hermitian,
  not_positive,
  degenerate_input,
  domain,
  seminorm_rank,
  no_convergence,
  numeric,
  resample,
  parse,
  io,
};

class error : public std::runtime_error {
public:
  error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

// Tolerances shared across modules. Double precision only; nothing here is
// tighter than what a Jacobi eigensolver delivers on blocks up to 64x64.
namespace tol {
inline constexpr double positivity = 1e-10;    // eigenvalue floor, relative to max(1, ||a||)
inline constexpr double trace_one = 1e-12;     // |tau(a) - 1| for density elements
inline constexpr double bures_clamp = 1e-8;    // overshoot of tau(|sqrt(x) sqrt(y)|) past [0, 1]
inline constexpr double hermitian = 1e-12;     // relative Frobenius gap ||a - a*||
inline constexpr double eig_convergence = 1e-13;  // off-diagonal Frobenius mass, relative
inline constexpr double lp_pivot = 1e-11;
inline constexpr double lp_feasibility = 1e-10;
}  // namespace tol

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Self-contained deterministic generator so that reports are byte-identical
// across platforms for a fixed seed.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller, pairs cached
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx gaussian_complex() {
    double re = gaussian();
    double im = gaussian();
    return {re, im};
  }

private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// stable per-trial sub-seeds
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
  uint64_t s = seed ^ (0x2545f4914f6cdd1dull * (index + 1));
  return splitmix64(s);
}

inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string format_sig(double v, int sig_digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, v);
  return buf;
}

inline std::string hex64(uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace denmet
