#pragma once

#include <vector>

namespace seedsel {

// Noise tables indexed by noise level k = 1..T. Index 0 of each accessor is
// the boundary level with alpha_bar(0) = 1 (clean data).
class NoiseSchedule {
 public:
  // Linear beta ramp from beta_start to beta_end inclusive.
  static NoiseSchedule linear(int total_steps, double beta_start, double beta_end);

  // Explicit beta table; validated the same way.
  static NoiseSchedule from_betas(std::vector<double> betas);

  int total_steps() const { return static_cast<int>(betas_.size()); }

  double beta(int k) const { return betas_.at(k - 1); }
  double alpha(int k) const { return alphas_.at(k - 1); }
  double alpha_bar(int k) const { return k == 0 ? 1.0 : alpha_bars_.at(k - 1); }

  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<double>& alpha_bars() const { return alpha_bars_; }

  // Public APIs count completed reverse steps; the latent after s completed
  // steps sits at noise level T - s.
  int level_after(int steps_done) const { return total_steps() - steps_done; }

 private:
  std::vector<double> betas_;
  std::vector<double> alphas_;
  std::vector<double> alpha_bars_;
};

inline NoiseSchedule build_schedule(int total_steps, double beta_start, double beta_end) {
  return NoiseSchedule::linear(total_steps, beta_start, beta_end);
}

}  // namespace seedsel
