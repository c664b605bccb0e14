#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wcospec {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Log-modulus clamps.  A sample at kLogFloor marks a boundary zero; it is a
// flag, not a value (see BoundaryLogModulus).
inline constexpr double kLogFloor = -700.0;
inline constexpr double kLogCeil = 700.0;

// Dead zone around |z| = 1 for root classification: a root closer than this
// to the unit circle is indistinguishable from a boundary zero in double
// precision.
inline constexpr double kBlaschkeEps = 1e-12;

// Evaluation guard: eval() refuses |z| > 1 - kEvalEps.
inline constexpr double kEvalEps = 1e-9;

// Golden rotation angle (1/golden ratio), the default irrational angle.
inline const double kGoldenAngle = (std::sqrt(5.0) - 1.0) / 2.0;

struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

struct not_invertible : std::runtime_error {
  explicit not_invertible(const std::string& what) : std::runtime_error(what) {}
};

struct eval_near_boundary : std::runtime_error {
  explicit eval_near_boundary(const std::string& what) : std::runtime_error(what) {}
};

struct finite_order_out_of_scope : std::runtime_error {
  explicit finite_order_out_of_scope(const std::string& what) : std::runtime_error(what) {}
};

struct evaluation_error : std::runtime_error {
  explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Wraps x into [0, 1).
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double theta) { return kTwoPi * wrap_unit(theta / kTwoPi); }

// Circular distance of x to the nearest integer.
inline double dist_to_integer(double x) {
  double f = wrap_unit(x);
  return std::min(f, 1.0 - f);
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Runs fn(i) for i in [0, n).  Results must be written to per-index slots so
// the outcome is independent of the thread partition.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Global worker-thread cap used by parallel_for (default: hardware up to 8).
void set_thread_count(unsigned n);
unsigned thread_count();

// Deterministic 64-bit generator (splitmix64).  Used instead of std::
// distributions so sampled sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard complex Gaussian via Box-Muller (independent re/im, variance 1/2 each).
  complex gaussian() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }

  // Uniform point in the disk |z| <= radius.
  complex disk_point(double radius) {
    double r = radius * std::sqrt(uniform());
    double t = kTwoPi * uniform();
    return std::polar(r, t);
  }

 private:
  std::uint64_t state_;
};

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned nt = thread_count();
  if (nt <= 1 || n < 2 * nt) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  for (unsigned t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace detail {
inline unsigned& thread_count_ref() {
  static unsigned n = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  return n;
}
}  // namespace detail

inline void set_thread_count(unsigned n) { detail::thread_count_ref() = std::max(1u, n); }
inline unsigned thread_count() { return detail::thread_count_ref(); }

}  // namespace wcospec
