#include "wcospec/boundary_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wcospec {

double grid_measure(const std::vector<bool>& set) {
  if (set.empty()) return 0.0;
  std::size_t count = 0;
  for (bool b : set) count += b ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(set.size());
}

namespace {

// Circular distance on [0, 1).
double circ_dist(double a, double b) { return dist_to_integer(a - b); }

void mark_interval(std::vector<bool>& marks, double center, double half) {
  const auto m = static_cast<double>(marks.size());
  const auto lo = static_cast<long>(std::ceil((center - half) * m));
  const auto hi = static_cast<long>(std::floor((center + half) * m));
  for (long j = lo; j <= hi; ++j) {
    long idx = j % static_cast<long>(marks.size());
    if (idx < 0) idx += static_cast<long>(marks.size());
    marks[static_cast<std::size_t>(idx)] = true;
  }
}

}  // namespace

std::vector<bool> open_dense_rational_union(std::size_t m, double measure, double t,
                                            std::size_t cover_steps) {
  if (!is_power_of_two(m) || m < 16) throw invalid_input("open_dense_rational_union: grid size");
  if (measure <= 0.0 || measure >= 1.0) throw invalid_input("open_dense_rational_union: measure");

  // Point marks contributed by intervals whose length is below grid
  // resolution: they still contain their own (grid-rational) center.
  std::vector<bool> point_marks(m, false);

  // Orbit-adapted rationals: the grid rational nearest each of the first
  // cover_steps orbit points of the rotation by t.
  for (std::size_t j = 0; j < cover_steps; ++j) {
    double x = wrap_unit(static_cast<double>(j) * t);
    auto idx = static_cast<std::size_t>(std::llround(x * static_cast<double>(m))) % m;
    point_marks[idx] = true;
  }

  // Tail of the enumeration: all reduced fractions p/q with q <= 1024.  Only
  // those landing exactly on a grid point mark a sample.
  for (std::size_t q = 1; q <= 1024; ++q) {
    if (m % q != 0) continue;
    for (std::size_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      point_marks[p * (m / q)] = true;
    }
  }

  // The first interval carries essentially all the measure; the deeper
  // intervals of the enumeration are centered at rationals inside it, so at
  // grid scale they add nothing (a single positive-length interval gives the
  // largest worst-start Birkhoff average for a fixed total measure: every
  // small interval loses up to one hit to the three-distance pattern).
  const double c0 =
      std::round(0.31 * static_cast<double>(m)) / static_cast<double>(m);

  auto realize = [&](double eps) {
    std::vector<bool> marks = point_marks;
    mark_interval(marks, c0, eps / 16.0);  // length eps * 2^-3
    return marks;
  };

  double lo = 0.0, hi = 8.0;
  std::vector<bool> result = realize(hi);
  if (grid_measure(result) < measure) return result;  // cannot reach target; best effort
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    result = realize(mid);
    double got = grid_measure(result);
    if (std::abs(got - measure) * static_cast<double>(m) <= 1.0) return result;
    if (got < measure)
      lo = mid;
    else
      hi = mid;
  }
  return realize(hi);
}

namespace {

void removed_intervals(double a, double b, int stage, int max_stage, double c,
                       std::vector<std::pair<double, double>>& out) {
  if (stage > max_stage || b <= a) return;
  double len = c * std::pow(0.25, stage);
  if (len >= (b - a)) return;
  double mid = 0.5 * (a + b);
  out.emplace_back(mid - len / 2.0, mid + len / 2.0);
  removed_intervals(a, mid - len / 2.0, stage + 1, max_stage, c, out);
  removed_intervals(mid + len / 2.0, b, stage + 1, max_stage, c, out);
}

}  // namespace

std::vector<bool> fat_cantor_set(std::size_t m, double measure) {
  if (!is_power_of_two(m) || m < 16) throw invalid_input("fat_cantor_set: grid size");
  if (measure <= 0.0 || measure >= 1.0) throw invalid_input("fat_cantor_set: measure");

  const int max_stage = std::max(4, static_cast<int>(std::ceil(std::log2(4.0 * static_cast<double>(m)) / 2.0)));

  auto realize = [&](double c) {
    std::vector<std::pair<double, double>> removed;
    removed_intervals(0.0, 1.0, 1, max_stage, c, removed);
    std::vector<bool> marks(m, true);
    for (const auto& [lo, hi] : removed) {
      auto j0 = static_cast<long>(std::floor(lo * static_cast<double>(m))) ;
      auto j1 = static_cast<long>(std::ceil(hi * static_cast<double>(m)));
      for (long j = j0; j <= j1; ++j) {
        double x = static_cast<double>(j) / static_cast<double>(m);
        if (x > lo && x < hi && j >= 0 && j < static_cast<long>(m)) {
          marks[static_cast<std::size_t>(j)] = false;
        }
      }
    }
    return marks;
  };

  double lo = 0.0, hi = std::min(1.9, 2.0 * (1.0 - measure) * 1.5);
  std::vector<bool> result = realize(hi);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    result = realize(mid);
    double got = grid_measure(result);
    if (std::abs(got - measure) * static_cast<double>(m) <= 1.0) return result;
    if (got > measure)
      lo = mid;  // remove more
    else
      hi = mid;
  }
  return result;
}

}  // namespace wcospec
