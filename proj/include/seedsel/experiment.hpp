#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seedsel/dataset.hpp"
#include "seedsel/degradation.hpp"
#include "seedsel/diffusion.hpp"
#include "seedsel/metrics.hpp"

namespace seedsel {

// Everything a run needs. Loaded from one JSON document in which every field
// is optional; see README for the schema and defaults.
struct ExperimentConfig {
  struct Dataset {
    std::string source = "synthetic";  // "synthetic" | "directory"
    SynthParams synth;
    std::filesystem::path directory;            // evaluation PNGs (directory source)
    std::filesystem::path reference_directory;  // denoiser PNGs (directory source)
  } dataset;

  struct Denoiser {
    DenoiserKind kind = DenoiserKind::empirical;
    double stddev = 0.0;  // per-component stddev for gaussian_mixture
  } denoiser;

  DegradationConfig degradation;

  int total_steps = 20;
  double beta_start = 1e-4;
  double beta_end = 0.02;

  int num_candidates = 5;
  std::vector<int> truncation_steps = {10, 15, 20};
  std::optional<int> truncation_step;  // select-seed; defaults to the first sweep entry
  double eta = 0.0;
  std::uint64_t base_seed = 0;

  double guidance_weight = 1.0;

  int trials = 1;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "out";
  int workers = 0;  // 0 = OpenMP default

  void validate() const;
  int selection_step() const { return truncation_step.value_or(truncation_steps.front()); }
  NoiseSchedule schedule() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

// Denoiser shared by encoder and decoder for images of the given geometry.
// Synthetic sources regenerate references from the master seed; directory
// sources load them from disk.
DenoiserSpec build_denoiser(const ExperimentConfig& cfg, int height, int width,
                            std::uint64_t dataset_seed);

struct ImageOutcome {
  int image_id = 0;
  std::vector<std::vector<double>> scores_db;  // [sweep index][candidate]
  std::vector<int> chosen;                     // [sweep index]
  int oracle_index = 0;
  MetricReport baseline;
  std::vector<MetricReport> selected;  // [sweep index]
};

struct StrategySummary {
  std::string name;
  std::optional<int> truncation_step;  // absent for the baseline
  double mean_psnr_db = 0.0;
  double mean_y_psnr_db = 0.0;
  double mean_ssim = 0.0;
  std::optional<double> agreement_rate;
};

struct TrialReport {
  int trial = 0;
  std::uint64_t dataset_seed = 0;
  std::uint64_t base_seed = 0;
  std::vector<ImageOutcome> images;
  std::vector<StrategySummary> strategies;  // baseline first, then sweep order
};

struct SignTestSummary {
  int truncation_step = 0;
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double p_value = 1.0;  // one-sided, H1: selection beats baseline
  double mean_agreement = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialReport> trials;
  std::vector<SignTestSummary> sign_tests;  // mean Y-PSNR per trial, per t
};

// P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
double sign_test_p_value(int wins, int losses);

TrialReport run_trial(const ExperimentConfig& cfg, int trial);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace seedsel
