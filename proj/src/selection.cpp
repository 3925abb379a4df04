#include "seedsel/selection.hpp"

#include <exception>
#include <string>

#include "seedsel/colorimetry.hpp"
#include "seedsel/errors.hpp"

namespace seedsel {

void SelectionConfig::validate() const {
  if (num_candidates < 1) throw ConfigError("selection.num_candidates must be >= 1");
  if (total_steps < 1) throw ConfigError("selection.total_steps must be >= 1");
  if (truncation_step < 1 || truncation_step > total_steps) {
    throw ConfigError("selection.truncation_step must lie in [1, total_steps]");
  }
  if (!(eta >= 0.0)) throw ConfigError("selection.eta must be >= 0");
}

int argmax_first(std::span<const double> values) {
  if (values.empty()) throw ConfigError("argmax of an empty score list");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::vector<std::vector<CandidateRecord>> generate_candidate_sweep(
    const Image& ground_truth, const SelectionConfig& cfg, std::span<const int> stops,
    const SamplerConfig& sampler, Exec candidate_exec, const SeedDeriver& derive) {
  cfg.validate();
  if (sampler.schedule == nullptr || sampler.schedule->total_steps() != cfg.total_steps) {
    throw ConfigError("selection.total_steps does not match the noise schedule");
  }
  if (sampler.denoiser == nullptr) throw ConfigError("selection: denoiser is required");
  if (ground_truth.height() != sampler.denoiser->height() ||
      ground_truth.width() != sampler.denoiser->width()) {
    throw DimensionError("generate_candidates: ground truth geometry does not match the denoiser");
  }
  for (int s : stops) {
    if (s < 1 || s > cfg.total_steps) throw ConfigError("truncation step outside [1, T]");
  }

  const int n = cfg.num_candidates;
  SamplerConfig local = sampler;
  local.eta = cfg.eta;

  std::vector<std::vector<CandidateRecord>> out(stops.size(), std::vector<CandidateRecord>(n));
  std::vector<std::exception_ptr> failures(n);

  auto work = [&](int i) {
    try {
      const std::uint64_t seed = derive(cfg.base_seed, static_cast<std::uint64_t>(i));
      auto ckpts = run_trajectory_checkpoints(seed, stops, local);
      for (std::size_t s = 0; s < stops.size(); ++s) {
        CandidateRecord& rec = out[s][i];
        rec.seed_index = i;
        rec.derived_seed = seed;
        rec.score_db = y_psnr(clamp01(ckpts[s].x0_estimate), ground_truth);
        rec.checkpoint = std::move(ckpts[s]);
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  if (candidate_exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) work(i);
  } else {
    for (int i = 0; i < n; ++i) work(i);
  }

  for (int i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const ConfigError& e) {
      throw ConfigError("candidate " + std::to_string(i) + ": " + e.what());
    } catch (const DimensionError& e) {
      throw DimensionError("candidate " + std::to_string(i) + ": " + e.what());
    } catch (const StateError& e) {
      throw StateError("candidate " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CandidateRecord> generate_candidates(const Image& ground_truth,
                                                 const SelectionConfig& cfg,
                                                 const SamplerConfig& sampler,
                                                 Exec candidate_exec, const SeedDeriver& derive) {
  const int stop = cfg.truncation_step;
  auto sweep = generate_candidate_sweep(ground_truth, cfg, std::span<const int>(&stop, 1), sampler,
                                        candidate_exec, derive);
  return std::move(sweep.front());
}

SelectionReport select_seed(std::span<const CandidateRecord> records) {
  if (records.empty()) throw ConfigError("select_seed: no candidates");
  SelectionReport report;
  report.scores_db.reserve(records.size());
  for (const auto& r : records) report.scores_db.push_back(r.score_db);
  report.chosen_index = argmax_first(report.scores_db);
  return report;
}

Image finalize(const CandidateRecord& record, const SamplerConfig& sampler,
               const Image& condition) {
  const TrajectoryCheckpoint done =
      resume_trajectory(record.checkpoint, sampler.schedule->total_steps(), sampler);
  return cc_merge(clamp01(done.x0_estimate), condition);
}

Image decode_from_seed(std::uint64_t seed, const SamplerConfig& sampler, const Image& condition) {
  const TrajectoryCheckpoint done = run_trajectory(seed, sampler.schedule->total_steps(), sampler);
  return cc_merge(clamp01(done.x0_estimate), condition);
}

double agreement_rate(std::span<const std::pair<int, int>> pairs) {
  if (pairs.empty()) throw ConfigError("agreement_rate: empty list");
  std::size_t hits = 0;
  for (const auto& [chosen, oracle] : pairs) hits += chosen == oracle ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

}  // namespace seedsel
