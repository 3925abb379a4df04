#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "seedsel/diffusion.hpp"
#include "seedsel/metrics.hpp"

namespace seedsel {

struct SelectionConfig {
  int num_candidates = 5;
  int truncation_step = 10;  // completed reverse steps before scoring
  int total_steps = 20;
  std::uint64_t base_seed = 0;
  double eta = 0.0;

  void validate() const;
};

struct CandidateRecord {
  int seed_index = 0;
  std::uint64_t derived_seed = 0;
  TrajectoryCheckpoint checkpoint;
  double score_db = 0.0;  // Y-PSNR of the clamped x0 estimate vs ground truth
};

struct SelectionReport {
  int chosen_index = 0;
  std::vector<double> scores_db;
  std::optional<int> oracle_index;
  std::optional<bool> agreed_with_oracle;
  std::optional<MetricReport> final_metrics;
};

using SeedDeriver = std::function<std::uint64_t(std::uint64_t base, std::uint64_t index)>;

// First index of the maximum; throws ConfigError on empty input.
int argmax_first(std::span<const double> values);

// N candidates truncated at cfg.truncation_step and scored against the
// ground truth. Candidate trajectories run concurrently under
// Exec::parallel; the result does not depend on the policy. cfg.eta
// overrides sampler.eta.
std::vector<CandidateRecord> generate_candidates(const Image& ground_truth,
                                                 const SelectionConfig& cfg,
                                                 const SamplerConfig& sampler,
                                                 Exec candidate_exec = Exec::serial,
                                                 const SeedDeriver& derive = derive_seed);

// Same, but checkpoints every trajectory at each step in `stops` during a
// single pass. Result is indexed [stop][candidate].
std::vector<std::vector<CandidateRecord>> generate_candidate_sweep(
    const Image& ground_truth, const SelectionConfig& cfg, std::span<const int> stops,
    const SamplerConfig& sampler, Exec candidate_exec = Exec::serial,
    const SeedDeriver& derive = derive_seed);

SelectionReport select_seed(std::span<const CandidateRecord> records);

// Encoder side: resume the record to T steps, clamp, merge chroma from the
// condition image.
Image finalize(const CandidateRecord& record, const SamplerConfig& sampler,
               const Image& condition);

// Decoder side: all T steps from scratch with only the seed known.
Image decode_from_seed(std::uint64_t seed, const SamplerConfig& sampler, const Image& condition);

// Fraction of (chosen, oracle) pairs that agree.
double agreement_rate(std::span<const std::pair<int, int>> pairs);

}  // namespace seedsel
