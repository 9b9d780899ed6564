#include "stepresp/rkf45.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace stepresp {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("integrator tolerances must be positive");
  if (!(h_min > 0.0) || !(h_min <= h_init) || !(h_init <= h_max))
    throw ConfigError(fmt::format("integrator steps must satisfy 0 < h_min <= h_init <= h_max (got {}, {}, {})", h_min,
                                  h_init, h_max));
  if (!(dense_output_dt > 0.0)) throw ConfigError("dense_output_dt must be positive");
}

std::vector<double> output_times(double t0, double t1, double dt, std::span<const double> extra) {
  std::vector<double> out;
  const double span = t1 - t0;
  const auto count = static_cast<std::size_t>(std::floor(span / dt * (1.0 + 1e-12)));
  out.reserve(count + 2 + extra.size());
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    if (t1 - t > 1e-12 * span) out.push_back(t);
  }
  out.push_back(t1);
  for (double t : extra)
    if (t >= t0 && t <= t1) out.push_back(t);
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  merged.reserve(out.size());
  for (double t : out)
    if (merged.empty() || t - merged.back() > 1e-13 * span) merged.push_back(t);
  // keep the exact end point
  merged.back() = t1;
  return merged;
}

}  // namespace stepresp
