#include <algorithm>
#include <cmath>

#include "seedsel/diffusion.hpp"
#include "seedsel/errors.hpp"

namespace seedsel {

namespace {

void require_config(const SamplerConfig& cfg) {
  if (cfg.schedule == nullptr || cfg.denoiser == nullptr) {
    throw ConfigError("sampler: schedule and denoiser are required");
  }
  if (!(cfg.eta >= 0.0) || !std::isfinite(cfg.eta)) throw ConfigError("sampler: eta must be >= 0");
}

}  // namespace

TrajectoryCheckpoint reverse_step(const TrajectoryCheckpoint& ckpt, const SamplerConfig& cfg) {
  require_config(cfg);
  const NoiseSchedule& sched = *cfg.schedule;
  const int total = sched.total_steps();
  if (ckpt.steps_done >= total) throw StateError("reverse_step: trajectory already complete");
  if (ckpt.steps_done < 0) throw StateError("reverse_step: negative step count");

  const int k = sched.level_after(ckpt.steps_done);
  const double ab = sched.alpha_bar(k);
  const double ab_prev = sched.alpha_bar(k - 1);

  Tensor eps = denoiser_eps(ckpt.latent, k, *cfg.denoiser, sched, cfg.exec);
  if (cfg.guidance != nullptr && cfg.guidance->weight > 0.0) {
    eps = apply_guidance(eps, ckpt.latent, k, *cfg.guidance, sched);
  }
  Image x0_hat = predict_x0(ckpt.latent, eps, k, sched);

  const double sigma =
      cfg.eta * std::sqrt((1.0 - ab_prev) / (1.0 - ab)) * std::sqrt(1.0 - ab / ab_prev);
  const double dir = std::sqrt(std::max(0.0, 1.0 - ab_prev - sigma * sigma));
  const double a = std::sqrt(ab_prev);

  TrajectoryCheckpoint next;
  next.seed_id = ckpt.seed_id;
  next.rng = ckpt.rng;
  next.steps_done = ckpt.steps_done + 1;
  next.latent = Image(ckpt.latent.height(), ckpt.latent.width());

  auto out = next.latent.values();
  auto x0 = x0_hat.values();
  auto e = eps.values();
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = a * x0[p] + dir * e[p];
  if (cfg.eta > 0.0) {
    const Tensor z = next.rng.normal_tensor(ckpt.latent.height(), ckpt.latent.width());
    auto zv = z.values();
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += sigma * zv[p];
  }
  next.x0_estimate = std::move(x0_hat);
  return next;
}

TrajectoryCheckpoint init_trajectory(std::uint64_t seed, int height, int width) {
  TrajectoryCheckpoint ckpt;
  ckpt.seed_id = seed;
  ckpt.rng = Rng(seed);
  ckpt.steps_done = 0;
  ckpt.latent = ckpt.rng.normal_tensor(height, width);
  // Nothing has been denoised yet; the estimate starts as the raw latent.
  ckpt.x0_estimate = ckpt.latent;
  return ckpt;
}

TrajectoryCheckpoint resume_trajectory(TrajectoryCheckpoint ckpt, int target,
                                       const SamplerConfig& cfg) {
  require_config(cfg);
  if (target < ckpt.steps_done || target > cfg.schedule->total_steps()) {
    throw ConfigError("resume target " + std::to_string(target) + " outside [" +
                      std::to_string(ckpt.steps_done) + ", " +
                      std::to_string(cfg.schedule->total_steps()) + "]");
  }
  while (ckpt.steps_done < target) ckpt = reverse_step(ckpt, cfg);
  return ckpt;
}

TrajectoryCheckpoint run_trajectory(std::uint64_t seed, int stop_after, const SamplerConfig& cfg) {
  require_config(cfg);
  if (stop_after < 0 || stop_after > cfg.schedule->total_steps()) {
    throw ConfigError("stop_after must lie in [0, T]");
  }
  return resume_trajectory(init_trajectory(seed, cfg.denoiser->height(), cfg.denoiser->width()),
                           stop_after, cfg);
}

std::vector<TrajectoryCheckpoint> run_trajectory_checkpoints(std::uint64_t seed,
                                                             std::span<const int> stops,
                                                             const SamplerConfig& cfg) {
  require_config(cfg);
  for (int s : stops) {
    if (s < 0 || s > cfg.schedule->total_steps()) throw ConfigError("checkpoint step outside [0, T]");
  }
  std::vector<int> order(stops.begin(), stops.end());
  std::sort(order.begin(), order.end());

  std::vector<TrajectoryCheckpoint> out(stops.size());
  TrajectoryCheckpoint ckpt = init_trajectory(seed, cfg.denoiser->height(), cfg.denoiser->width());
  for (int s : order) {
    ckpt = resume_trajectory(std::move(ckpt), s, cfg);
    for (std::size_t i = 0; i < stops.size(); ++i) {
      if (stops[i] == s) out[i] = ckpt;
    }
  }
  return out;
}

}  // namespace seedsel
