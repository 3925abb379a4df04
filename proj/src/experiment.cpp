#include "seedsel/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>

#include "seedsel/colorimetry.hpp"
#include "seedsel/errors.hpp"
#include "seedsel/png_io.hpp"
#include "seedsel/selection.hpp"

namespace seedsel {

using nlohmann::json;

namespace {

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& path) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

const json& section(const json& root, const char* key) {
  static const json empty = json::object();
  if (!root.contains(key)) return empty;
  const json& s = root.at(key);
  if (!s.is_object()) throw ConfigError(std::string(key) + ": expected an object");
  return s;
}

std::string kind_name(DenoiserKind k) {
  return k == DenoiserKind::empirical ? "empirical" : "gaussian_mixture";
}

std::vector<std::filesystem::path> png_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  if (ec) throw IoError(dir.string() + ": cannot list directory");
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<int> sweep_with_final(const ExperimentConfig& cfg) {
  std::set<int> s(cfg.truncation_steps.begin(), cfg.truncation_steps.end());
  s.insert(cfg.total_steps);
  return {s.begin(), s.end()};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset.source != "synthetic" && dataset.source != "directory") {
    throw ConfigError("dataset.source must be 'synthetic' or 'directory'");
  }
  if (dataset.source == "directory" && (dataset.directory.empty() || dataset.reference_directory.empty())) {
    throw ConfigError("dataset.directory and dataset.reference_directory are required for a directory source");
  }
  if (dataset.synth.count < 1) throw ConfigError("dataset.count must be >= 1");
  if (dataset.synth.height < kSsimWindow || dataset.synth.width < kSsimWindow) {
    throw ConfigError("dataset.height/width must be >= 11");
  }
  if (denoiser.stddev < 0.0) throw ConfigError("denoiser.stddev must be >= 0");
  degradation.validate();
  if (total_steps < 1 || total_steps > 65535) throw ConfigError("schedule.total_steps must lie in [1, 65535]");
  schedule();
  if (num_candidates < 1 || num_candidates > 65535) {
    throw ConfigError("selection.num_candidates must lie in [1, 65535]");
  }
  if (truncation_steps.empty()) throw ConfigError("selection.truncation_steps must not be empty");
  for (int t : truncation_steps) {
    if (t < 1 || t > total_steps) throw ConfigError("selection.truncation_steps: every t must lie in [1, T]");
  }
  if (truncation_step && (*truncation_step < 1 || *truncation_step > total_steps)) {
    throw ConfigError("selection.truncation_step must lie in [1, T]");
  }
  if (!(eta >= 0.0)) throw ConfigError("selection.eta must be >= 0");
  if (!(guidance_weight >= 0.0)) throw ConfigError("guidance.weight must be >= 0");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");
}

NoiseSchedule ExperimentConfig::schedule() const {
  return NoiseSchedule::linear(total_steps, beta_start, beta_end);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  ExperimentConfig cfg;
  const json& ds = section(root, "dataset");
  read_field(ds, "source", cfg.dataset.source, "dataset");
  std::string pattern = to_string(cfg.dataset.synth.family);
  read_field(ds, "pattern", pattern, "dataset");
  cfg.dataset.synth.family = parse_pattern_family(pattern);
  read_field(ds, "count", cfg.dataset.synth.count, "dataset");
  read_field(ds, "reference_count", cfg.dataset.synth.reference_count, "dataset");
  read_field(ds, "height", cfg.dataset.synth.height, "dataset");
  read_field(ds, "width", cfg.dataset.synth.width, "dataset");
  read_field(ds, "noise_level", cfg.dataset.synth.noise_level, "dataset");
  std::string dir, ref_dir;
  read_field(ds, "directory", dir, "dataset");
  read_field(ds, "reference_directory", ref_dir, "dataset");
  cfg.dataset.directory = dir;
  cfg.dataset.reference_directory = ref_dir;

  const json& dn = section(root, "denoiser");
  std::string kind = kind_name(cfg.denoiser.kind);
  read_field(dn, "kind", kind, "denoiser");
  if (kind == "empirical") {
    cfg.denoiser.kind = DenoiserKind::empirical;
  } else if (kind == "gaussian_mixture") {
    cfg.denoiser.kind = DenoiserKind::gaussian_mixture;
  } else {
    throw ConfigError("denoiser.kind must be 'empirical' or 'gaussian_mixture'");
  }
  read_field(dn, "stddev", cfg.denoiser.stddev, "denoiser");

  const json& dg = section(root, "degradation");
  read_field(dg, "blur_sigma", cfg.degradation.blur_sigma, "degradation");
  read_field(dg, "chroma_gain", cfg.degradation.chroma_gain, "degradation");
  read_field(dg, "quant_levels", cfg.degradation.quant_levels, "degradation");

  const json& sc = section(root, "schedule");
  read_field(sc, "total_steps", cfg.total_steps, "schedule");
  read_field(sc, "beta_start", cfg.beta_start, "schedule");
  read_field(sc, "beta_end", cfg.beta_end, "schedule");

  const json& sel = section(root, "selection");
  read_field(sel, "num_candidates", cfg.num_candidates, "selection");
  read_field(sel, "truncation_steps", cfg.truncation_steps, "selection");
  if (sel.contains("truncation_step")) {
    int t = 0;
    read_field(sel, "truncation_step", t, "selection");
    cfg.truncation_step = t;
  }
  read_field(sel, "eta", cfg.eta, "selection");
  read_field(sel, "base_seed", cfg.base_seed, "selection");

  const json& gd = section(root, "guidance");
  read_field(gd, "weight", cfg.guidance_weight, "guidance");

  read_field(root, "trials", cfg.trials, "config");
  read_field(root, "master_seed", cfg.master_seed, "config");
  read_field(root, "workers", cfg.workers, "config");
  std::string out_dir = cfg.output_dir.string();
  read_field(root, "output_dir", out_dir, "config");
  cfg.output_dir = out_dir;

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["dataset"] = {{"source", cfg.dataset.source},
                  {"pattern", to_string(cfg.dataset.synth.family)},
                  {"count", cfg.dataset.synth.count},
                  {"reference_count", cfg.dataset.synth.reference_count},
                  {"height", cfg.dataset.synth.height},
                  {"width", cfg.dataset.synth.width},
                  {"noise_level", cfg.dataset.synth.noise_level},
                  {"directory", cfg.dataset.directory.string()},
                  {"reference_directory", cfg.dataset.reference_directory.string()}};
  j["denoiser"] = {{"kind", kind_name(cfg.denoiser.kind)}, {"stddev", cfg.denoiser.stddev}};
  j["degradation"] = {{"blur_sigma", cfg.degradation.blur_sigma},
                      {"chroma_gain", cfg.degradation.chroma_gain},
                      {"quant_levels", cfg.degradation.quant_levels}};
  j["schedule"] = {{"total_steps", cfg.total_steps},
                   {"beta_start", cfg.beta_start},
                   {"beta_end", cfg.beta_end}};
  j["selection"] = {{"num_candidates", cfg.num_candidates},
                    {"truncation_steps", cfg.truncation_steps},
                    {"truncation_step", cfg.selection_step()},
                    {"eta", cfg.eta},
                    {"base_seed", cfg.base_seed}};
  j["guidance"] = {{"weight", cfg.guidance_weight}};
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  j["output_dir"] = cfg.output_dir.string();
  return j.dump(2);
}

DenoiserSpec build_denoiser(const ExperimentConfig& cfg, int height, int width,
                            std::uint64_t dataset_seed) {
  std::vector<Image> refs;
  if (cfg.dataset.source == "directory") {
    for (const auto& file : png_files(cfg.dataset.reference_directory)) {
      refs.push_back(load_image(file));
      if (refs.back().height() != height || refs.back().width() != width) {
        throw DimensionError(file.string() + ": reference geometry does not match the image");
      }
    }
    if (refs.empty()) throw ConfigError("dataset.reference_directory holds no PNG files");
  } else {
    SynthParams p = cfg.dataset.synth;
    p.height = height;
    p.width = width;
    p.master_seed = dataset_seed;
    const int count = p.reference_count < 0 ? p.count : p.reference_count;
    for (int j = 0; j < count; ++j) {
      refs.push_back(synth_image(p.family, height, width, p.noise_level,
                                 derive_seed(dataset_seed, 2ULL * j + 1)));
    }
  }
  if (cfg.denoiser.kind == DenoiserKind::empirical) return DenoiserSpec::empirical(std::move(refs));

  std::vector<MixtureComponent> comps;
  const double w = 1.0 / static_cast<double>(refs.size());
  for (auto& r : refs) comps.push_back({w, std::move(r), cfg.denoiser.stddev});
  // Equal weights can miss 1 by a few ulps; put the remainder on the first.
  double total = 0.0;
  for (const auto& c : comps) total += c.weight;
  comps.front().weight += 1.0 - total;
  return DenoiserSpec::gaussian_mixture(std::move(comps));
}

double sign_test_p_value(int wins, int losses) {
  const int n = wins + losses;
  if (n == 0) return 1.0;
  // Sum of binomial(n, k) / 2^n for k >= wins, in log space.
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0) - n * std::log(2.0);
    p += std::exp(log_term);
  }
  return std::min(1.0, p);
}

TrialReport run_trial(const ExperimentConfig& cfg, int trial) {
  cfg.validate();
  TrialReport report;
  report.trial = trial;
  report.dataset_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial));
  report.base_seed = cfg.base_seed + static_cast<std::uint64_t>(trial) * cfg.num_candidates;

  std::vector<Image> images;
  DenoiserSpec denoiser;
  if (cfg.dataset.source == "directory") {
    for (const auto& file : png_files(cfg.dataset.directory)) images.push_back(load_image(file));
    if (images.empty()) throw ConfigError("dataset.directory holds no PNG files");
    for (const auto& img : images) require_same_geometry(img, images.front(), "dataset images");
    denoiser = build_denoiser(cfg, images.front().height(), images.front().width(),
                              report.dataset_seed);
  } else {
    SynthParams p = cfg.dataset.synth;
    p.master_seed = report.dataset_seed;
    SynthDataset ds = synth_dataset(p);
    images = std::move(ds.images);
    if (cfg.denoiser.kind == DenoiserKind::empirical) {
      denoiser = std::move(ds.denoiser);
    } else {
      denoiser = build_denoiser(cfg, p.height, p.width, report.dataset_seed);
    }
  }

  const NoiseSchedule sched = cfg.schedule();
  const std::vector<int> stops = sweep_with_final(cfg);
  const std::size_t final_slot = stops.size() - 1;
  auto slot_of = [&](int t) {
    return static_cast<std::size_t>(std::find(stops.begin(), stops.end(), t) - stops.begin());
  };

  SelectionConfig sel;
  sel.num_candidates = cfg.num_candidates;
  sel.total_steps = cfg.total_steps;
  sel.truncation_step = cfg.total_steps;
  sel.base_seed = report.base_seed;
  sel.eta = cfg.eta;

  const int n_images = static_cast<int>(images.size());
  report.images.resize(n_images);
  std::vector<std::exception_ptr> failures(n_images);
  const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n_images; ++i) {
    try {
      const Image& gt = images[i];
      GuidanceConfig guidance{cfg.guidance_weight, degrade(gt, cfg.degradation), cfg.degradation};
      SamplerConfig sampler{&sched, &denoiser, &guidance, cfg.eta, Exec::serial};
      const auto sweep = generate_candidate_sweep(gt, sel, stops, sampler, Exec::serial);

      // Every candidate's T-step checkpoint is already its finished
      // trajectory, so finalizing any of them needs no further sampling.
      auto final_image = [&](int candidate) {
        return cc_merge(clamp01(sweep[final_slot][candidate].checkpoint.x0_estimate),
                        guidance.condition);
      };

      ImageOutcome& out = report.images[i];
      out.image_id = i;
      out.oracle_index = select_seed(sweep[final_slot]).chosen_index;
      out.baseline = compute_metrics(final_image(0), gt);
      for (int t : cfg.truncation_steps) {
        const auto& records = sweep[slot_of(t)];
        const SelectionReport r = select_seed(records);
        out.scores_db.push_back(r.scores_db);
        out.chosen.push_back(r.chosen_index);
        out.selected.push_back(compute_metrics(final_image(r.chosen_index), gt));
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  auto summarize = [&](std::string name, std::optional<int> t, auto&& metric_of) {
    StrategySummary s;
    s.name = std::move(name);
    s.truncation_step = t;
    for (const auto& img : report.images) {
      const MetricReport& m = metric_of(img);
      s.mean_psnr_db += m.psnr_db;
      s.mean_y_psnr_db += m.y_psnr_db;
      s.mean_ssim += m.ssim;
    }
    s.mean_psnr_db /= n_images;
    s.mean_y_psnr_db /= n_images;
    s.mean_ssim /= n_images;
    return s;
  };

  report.strategies.push_back(
      summarize("random_n1", std::nullopt, [](const ImageOutcome& o) -> const MetricReport& {
        return o.baseline;
      }));
  for (std::size_t k = 0; k < cfg.truncation_steps.size(); ++k) {
    const int t = cfg.truncation_steps[k];
    StrategySummary s = summarize("select_t" + std::to_string(t), t,
                                  [k](const ImageOutcome& o) -> const MetricReport& {
                                    return o.selected[k];
                                  });
    std::vector<std::pair<int, int>> pairs;
    for (const auto& img : report.images) pairs.emplace_back(img.chosen[k], img.oracle_index);
    s.agreement_rate = agreement_rate(pairs);
    report.strategies.push_back(std::move(s));
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  for (int trial = 0; trial < cfg.trials; ++trial) report.trials.push_back(run_trial(cfg, trial));

  for (std::size_t k = 0; k < cfg.truncation_steps.size(); ++k) {
    SignTestSummary st;
    st.truncation_step = cfg.truncation_steps[k];
    for (const auto& trial : report.trials) {
      const double base = trial.strategies.front().mean_y_psnr_db;
      const double sel = trial.strategies[k + 1].mean_y_psnr_db;
      if (sel > base) {
        ++st.wins;
      } else if (sel < base) {
        ++st.losses;
      } else {
        ++st.ties;
      }
      st.mean_agreement += *trial.strategies[k + 1].agreement_rate;
    }
    st.mean_agreement /= static_cast<double>(report.trials.size());
    st.p_value = sign_test_p_value(st.wins, st.losses);
    report.sign_tests.push_back(st);
  }
  return report;
}

namespace {

json metrics_json(const MetricReport& m) {
  return {{"psnr_db", m.psnr_db},
          {"y_psnr_db", m.y_psnr_db},
          {"ssim", m.ssim},
          {"lpips", "not computed"}};
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["config"] = json::parse(experiment_config_to_json(report.config));
  j["baseline_convention"] = "candidate index 0 of the derived-seed family";
  j["oracle_convention"] = "argmax of final-image Y-PSNR (selection at t = T)";
  j["trials"] = json::array();
  for (const auto& trial : report.trials) {
    json t;
    t["trial"] = trial.trial;
    t["dataset_seed"] = trial.dataset_seed;
    t["base_seed"] = trial.base_seed;
    t["strategies"] = json::array();
    for (const auto& s : trial.strategies) {
      json sj = {{"name", s.name},
                 {"truncation_step", s.truncation_step ? json(*s.truncation_step) : json(nullptr)},
                 {"mean_psnr_db", s.mean_psnr_db},
                 {"mean_y_psnr_db", s.mean_y_psnr_db},
                 {"mean_ssim", s.mean_ssim},
                 {"lpips", "not computed"},
                 {"agreement_rate", s.agreement_rate ? json(*s.agreement_rate) : json(nullptr)}};
      t["strategies"].push_back(sj);
    }
    t["images"] = json::array();
    for (const auto& img : trial.images) {
      json ij;
      ij["image_id"] = img.image_id;
      ij["oracle_index"] = img.oracle_index;
      ij["baseline"] = metrics_json(img.baseline);
      ij["selections"] = json::array();
      for (std::size_t k = 0; k < img.chosen.size(); ++k) {
        ij["selections"].push_back({{"truncation_step", report.config.truncation_steps[k]},
                                    {"scores_db", img.scores_db[k]},
                                    {"chosen_index", img.chosen[k]},
                                    {"agreed_with_oracle", img.chosen[k] == img.oracle_index},
                                    {"final", metrics_json(img.selected[k])}});
      }
      t["images"].push_back(ij);
    }
    j["trials"].push_back(t);
  }
  j["sign_tests"] = json::array();
  for (const auto& st : report.sign_tests) {
    j["sign_tests"].push_back({{"truncation_step", st.truncation_step},
                               {"wins", st.wins},
                               {"losses", st.losses},
                               {"ties", st.ties},
                               {"p_value", st.p_value},
                               {"mean_agreement", st.mean_agreement}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "trial,strategy,truncation_step,mean_psnr_db,mean_y_psnr_db,mean_ssim,lpips,agreement_rate\n";
  os << std::setprecision(10);
  for (const auto& trial : report.trials) {
    for (const auto& s : trial.strategies) {
      os << trial.trial << ',' << s.name << ',';
      if (s.truncation_step) os << *s.truncation_step;
      os << ',' << s.mean_psnr_db << ',' << s.mean_y_psnr_db << ',' << s.mean_ssim
         << ",not computed,";
      if (s.agreement_rate) os << *s.agreement_rate;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace seedsel
