#include "wcospec/radius.hpp"

#include <algorithm>
#include <cmath>

#include "wcospec/fft.hpp"

namespace wcospec {

namespace {

std::vector<double> moving_max(const std::vector<double>& s, std::size_t half) {
  const std::size_t m = s.size();
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    double best = s[j];
    for (std::size_t d = 1; d <= half; ++d) {
      best = std::max(best, s[(j + d) % m]);
      best = std::max(best, s[(j + m - d) % m]);
    }
    out[j] = best;
  }
  return out;
}

std::vector<double> moving_min(const std::vector<double>& s, std::size_t half) {
  const std::size_t m = s.size();
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    double best = s[j];
    for (std::size_t d = 1; d <= half; ++d) {
      best = std::min(best, s[(j + d) % m]);
      best = std::min(best, s[(j + m - d) % m]);
    }
    out[j] = best;
  }
  return out;
}

double mean_of(const std::vector<double>& s) {
  double acc = 0.0;
  for (double v : s) acc += v;
  return acc / static_cast<double>(s.size());
}

std::size_t default_window(std::size_t m) {
  std::size_t w = m / 1024 + 1;
  if (w % 2 == 0) ++w;
  return std::max<std::size_t>(w, 3);
}

void require_infinite_order(const EllipticAutomorphism& map) {
  if (auto q = map.order()) {
    throw finite_order_out_of_scope(
        "map has finite order " + std::to_string(*q) +
        "; C^order is the multiplication by the order-step cocycle weight");
  }
}

}  // namespace

EnvelopeSet boundary_envelopes(const std::vector<double>& log_modulus, std::size_t window) {
  if (window % 2 == 0 || window == 0) throw invalid_input("boundary_envelopes: window must be odd");
  const std::size_t half = (window - 1) / 2;
  EnvelopeSet e;
  e.vstar = moving_max(log_modulus, half);
  e.vlower = moving_min(log_modulus, half);
  e.vstarstar = moving_min(moving_max(e.vlower, half), half);
  return e;
}

RadiusEstimate rho_estimate(const WeightCocycle& cw, const RadiusSettings& settings) {
  require_infinite_order(cw.map);
  if (cw.map.fixed_point() != complex(0.0)) {
    return rho_estimate(conjugate_to_rotation(cw), settings);
  }
  if (settings.schedule.empty()) throw invalid_input("rho_estimate: empty schedule");

  // Outer boundary data at the weight's own grid (inner factors are
  // unimodular on the boundary and contribute nothing).
  const std::vector<double>& data = cw.weight.outer_log_modulus().patched();
  const std::size_t mw = data.size();
  const std::size_t m = settings.grid_m;
  const double t = cw.map.angle01();

  RadiusEstimate est;
  est.v_at_a = std::exp(cw.weight.outer_log_modulus().mean());

  // Birkhoff sums over all grid starts, nearest-sample data lookups,
  // accumulated incrementally across the schedule.
  std::vector<long> schedule = settings.schedule;
  std::sort(schedule.begin(), schedule.end());
  std::vector<double> sums(m, 0.0);
  long steps_done = 0;
  const double ratio = static_cast<double>(mw) / static_cast<double>(m);
  for (long n : schedule) {
    if (n <= 0) throw invalid_input("rho_estimate: schedule entries must be positive");
    std::vector<std::size_t> shifts;
    shifts.reserve(static_cast<std::size_t>(n - steps_done));
    for (long i = steps_done; i < n; ++i) {
      shifts.push_back(static_cast<std::size_t>(
          std::llround(wrap_unit(static_cast<double>(i) * t) * static_cast<double>(mw)) %
          static_cast<long long>(mw)));
    }
    parallel_for(m, [&](std::size_t j) {
      const auto base = static_cast<std::size_t>(std::llround(static_cast<double>(j) * ratio));
      double acc = sums[j];
      for (std::size_t s : shifts) acc += data[(base + s) % mw];
      sums[j] = acc;
    });
    steps_done = n;
    double best = sums[0];
    for (double v : sums) best = std::max(best, v);
    est.sequence.emplace_back(n, std::exp(best / static_cast<double>(n)));
  }
  est.value = est.sequence.back().second;

  // Envelope bounds at the data grid.
  const std::size_t w = settings.envelope_window ? settings.envelope_window : default_window(mw);
  EnvelopeSet env = boundary_envelopes(cw.weight.outer_log_modulus().raw(), w);
  est.v_star_at_a = std::exp(mean_of(env.vstar));
  est.v_starstar_at_a = std::exp(mean_of(env.vstarstar));

  EnvelopeSet env2 = boundary_envelopes(cw.weight.outer_log_modulus().raw(), 2 * w + 1);
  double alt = std::exp(mean_of(env2.vstar));
  if (std::abs(alt - est.v_star_at_a) > 0.05 * std::max(est.v_star_at_a, 1e-300))
    est.window_sensitive = true;

  // Sequence diagnostics and the reported ergodic tolerance.
  est.monotone_decreasing = true;
  int sign_changes = 0;
  for (std::size_t i = 1; i < est.sequence.size(); ++i) {
    double d = est.sequence[i].second - est.sequence[i - 1].second;
    if (d > 0.0) est.monotone_decreasing = false;
    if (i >= 2) {
      double prev = est.sequence[i - 1].second - est.sequence[i - 2].second;
      if (d * prev < 0.0) ++sign_changes;
    }
  }
  est.oscillating = sign_changes >= 2;
  if (est.sequence.size() >= 2) {
    est.tolerance = std::abs(est.sequence.back().second -
                             est.sequence[est.sequence.size() - 2].second) +
                    0.005 * est.value;
  } else {
    est.tolerance = 0.01 * est.value;
  }
  return est;
}

InnerRadiusEstimate r_estimate(const WeightCocycle& cw, const RadiusSettings& settings) {
  require_infinite_order(cw.map);
  if (cw.map.fixed_point() != complex(0.0)) {
    return r_estimate(conjugate_to_rotation(cw), settings);
  }

  InnerRadiusEstimate est;
  if (cw.weight.zeros_on_shilov()) {
    est.value = 0.0;
    est.shilov_zero = true;
    return est;
  }

  HInfFunction v = cw.weight.outer_part();
  RadiusEstimate recip = rho_estimate(WeightCocycle{v.reciprocal(), cw.map}, settings);
  est.value = 1.0 / recip.value;
  est.bracket_lo = 1.0 / recip.upper_bound();
  est.bracket_hi = 1.0 / recip.lower_bound();
  est.closed_form_used = true;

  // Direct infimum of |v_(n)(w)|^{1/n} over a polar grid, as a cross-check of
  // the inf-over-D identity.
  const std::size_t ring = 1024;
  std::vector<double> radii;
  for (double r = 0.10; r <= 0.951; r += 0.05) radii.push_back(r);
  std::vector<std::vector<double>> rings(radii.size(), std::vector<double>(ring));
  parallel_for(radii.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ring; ++j) {
      complex z = std::polar(radii[i], kTwoPi * static_cast<double>(j) / static_cast<double>(ring));
      rings[i][j] = v.outer_log_modulus_at(z);
    }
  });

  std::vector<long> schedule = settings.schedule;
  std::sort(schedule.begin(), schedule.end());
  const double t = cw.map.angle01();
  std::vector<std::vector<double>> sums(radii.size(), std::vector<double>(ring, 0.0));
  long steps_done = 0;
  for (long n : schedule) {
    std::vector<std::size_t> shifts;
    for (long i = steps_done; i < n; ++i) {
      shifts.push_back(static_cast<std::size_t>(
          std::llround(wrap_unit(static_cast<double>(i) * t) * static_cast<double>(ring)) %
          static_cast<long long>(ring)));
    }
    parallel_for(radii.size(), [&](std::size_t ri) {
      for (std::size_t j = 0; j < ring; ++j) {
        double acc = sums[ri][j];
        for (std::size_t s : shifts) acc += rings[ri][(j + s) % ring];
        sums[ri][j] = acc;
      }
    });
    steps_done = n;
    double worst = sums[0][0];
    for (const auto& row : sums)
      for (double s : row) worst = std::min(worst, s);
    est.sequence.emplace_back(n, std::exp(worst / static_cast<double>(n)));
  }
  return est;
}

}  // namespace wcospec
