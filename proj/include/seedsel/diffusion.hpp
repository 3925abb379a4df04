#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seedsel/degradation.hpp"
#include "seedsel/image.hpp"
#include "seedsel/kernels.hpp"
#include "seedsel/rng.hpp"
#include "seedsel/schedule.hpp"

namespace seedsel {

enum class DenoiserKind { gaussian_mixture, empirical };

struct MixtureComponent {
  double weight = 1.0;
  Image mean;
  double stddev = 0.0;
};

// Training-free denoiser. Both kinds give the exact posterior for their data
// distribution; `empirical` is the delta-mixture over a reference set.
struct DenoiserSpec {
  DenoiserKind kind = DenoiserKind::empirical;
  std::vector<MixtureComponent> components;  // gaussian_mixture
  std::vector<Image> dataset;                // empirical

  static DenoiserSpec gaussian_mixture(std::vector<MixtureComponent> components);
  static DenoiserSpec empirical(std::vector<Image> dataset);

  void validate() const;
  int height() const;
  int width() const;
};

// Reconstruction guidance toward a machine-oriented condition image through
// the linear part of the degradation operator.
struct GuidanceConfig {
  double weight = 0.0;
  Image condition;
  DegradationConfig op;
};

// x_k = sqrt(ab_k) * x0 + sqrt(1 - ab_k) * eps
Image forward_sample(const Image& x0, int k, const Tensor& eps, const NoiseSchedule& sched);

// Raw (unclamped) clean-image estimate implied by x_k and a noise prediction.
Image predict_x0(const Image& x_k, const Tensor& eps_hat, int k, const NoiseSchedule& sched);

Tensor denoiser_eps(const Image& x_k, int k, const DenoiserSpec& spec, const NoiseSchedule& sched,
                    Exec exec = Exec::serial);

// eps' = eps_hat + w * sqrt(1 - ab_k) * grad, with
// grad = A^T (A x0_hat - c) / sqrt(ab_k) the gradient of 0.5 * ||A x0_hat(x_k) - c||^2
// in x_k when eps_hat is held fixed.
Tensor apply_guidance(const Tensor& eps_hat, const Image& x_k, int k, const GuidanceConfig& g,
                      const NoiseSchedule& sched);

// Resumable sampler state. steps_done counts completed reverse steps.
struct TrajectoryCheckpoint {
  Image latent;
  int steps_done = 0;
  Rng rng;
  std::uint64_t seed_id = 0;
  Image x0_estimate;

  bool operator==(const TrajectoryCheckpoint&) const = default;
};

struct SamplerConfig {
  const NoiseSchedule* schedule = nullptr;
  const DenoiserSpec* denoiser = nullptr;
  const GuidanceConfig* guidance = nullptr;  // null or weight 0 disables guidance
  double eta = 0.0;
  Exec exec = Exec::serial;
};

// One DDIM-style update from level k = T - steps_done to k - 1. Draws one
// normal tensor from the checkpoint stream iff eta > 0.
TrajectoryCheckpoint reverse_step(const TrajectoryCheckpoint& ckpt, const SamplerConfig& cfg);

// Fresh trajectory: x_T drawn from the stream seeded with `seed`.
TrajectoryCheckpoint init_trajectory(std::uint64_t seed, int height, int width);

TrajectoryCheckpoint run_trajectory(std::uint64_t seed, int stop_after, const SamplerConfig& cfg);

// Continue until steps_done == target (target <= T).
TrajectoryCheckpoint resume_trajectory(TrajectoryCheckpoint ckpt, int target,
                                       const SamplerConfig& cfg);

// One pass to max(stops); returns a checkpoint at each requested stop, in the
// order given.
std::vector<TrajectoryCheckpoint> run_trajectory_checkpoints(std::uint64_t seed,
                                                             std::span<const int> stops,
                                                             const SamplerConfig& cfg);

}  // namespace seedsel
