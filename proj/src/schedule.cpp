#include "seedsel/schedule.hpp"

#include <cmath>
#include <string>

#include "seedsel/errors.hpp"

namespace seedsel {

NoiseSchedule NoiseSchedule::linear(int total_steps, double beta_start, double beta_end) {
  if (total_steps < 1) throw ConfigError("total_steps must be >= 1");
  if (!std::isfinite(beta_start) || !(beta_start > 0.0)) {
    throw ConfigError("beta_start must be in (0, 1)");
  }
  if (!std::isfinite(beta_end) || !(beta_end < 1.0)) {
    throw ConfigError("beta_end must be in (0, 1)");
  }
  if (beta_start > beta_end) throw ConfigError("beta_start must not exceed beta_end");

  std::vector<double> betas(total_steps);
  for (int i = 0; i < total_steps; ++i) {
    const double frac = total_steps == 1 ? 0.0 : static_cast<double>(i) / (total_steps - 1);
    betas[i] = beta_start + frac * (beta_end - beta_start);
  }
  return from_betas(std::move(betas));
}

NoiseSchedule NoiseSchedule::from_betas(std::vector<double> betas) {
  if (betas.empty()) throw ConfigError("total_steps must be >= 1");
  NoiseSchedule s;
  double running = 1.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    if (!(b > 0.0 && b < 1.0)) {
      throw ConfigError("beta[" + std::to_string(i) + "] outside (0, 1)");
    }
    const double a = 1.0 - b;
    running *= a;
    if (!(running > 0.0) || (!s.alpha_bars_.empty() && !(running < s.alpha_bars_.back()))) {
      throw ConfigError("alpha_bar must be strictly decreasing and positive");
    }
    s.alphas_.push_back(a);
    s.alpha_bars_.push_back(running);
  }
  s.betas_ = std::move(betas);
  return s;
}

}  // namespace seedsel
