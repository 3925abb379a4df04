// seedsel: command-line front end for the seed-selection codec.
//
//   seedsel encode <input.png> <machine.png>
//   seedsel select-seed <original.png> <machine.png> [--sidecar f] [--report f] [--final f]
//   seedsel reconstruct <machine.png> <sidecar> <output.png>
//   seedsel metrics <a.png> <b.png>
//   seedsel experiment
//
// Machine-readable results go to stdout, progress to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "seedsel/colorimetry.hpp"
#include "seedsel/degradation.hpp"
#include "seedsel/errors.hpp"
#include "seedsel/experiment.hpp"
#include "seedsel/metrics.hpp"
#include "seedsel/png_io.hpp"
#include "seedsel/selection.hpp"
#include "seedsel/sidecar.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace seedsel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitCorrupt = 5;
constexpr int kExitTruncated = 6;

struct GlobalOptions {
  std::string config_path;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
};

ExperimentConfig load_config(const GlobalOptions& g) {
  ExperimentConfig cfg = g.config_path.empty() ? parse_experiment_config("{}")
                                               : load_experiment_config(g.config_path);
  if (g.workers) cfg.workers = *g.workers;
  if (g.output_dir) cfg.output_dir = *g.output_dir;
  if (g.seed) {
    cfg.master_seed = *g.seed;
    cfg.base_seed = *g.seed;
  }
  cfg.validate();
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw IoError(path.string() + ": write failed");
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json metrics_json(const MetricReport& m) {
  return {{"psnr_db", m.psnr_db},
          {"y_psnr_db", m.y_psnr_db},
          {"ssim", m.ssim},
          {"lpips", "not computed"}};
}

int cmd_encode(const GlobalOptions& g, const fs::path& input, const fs::path& output) {
  const ExperimentConfig cfg = load_config(g);
  save_image(output, degrade(load_image(input), cfg.degradation));
  std::cerr << "encode: wrote " << output << "\n";
  return kExitOk;
}

int cmd_select_seed(const GlobalOptions& g, const fs::path& original_path,
                    const fs::path& machine_path, std::optional<fs::path> sidecar_path,
                    std::optional<fs::path> report_path, std::optional<fs::path> final_path) {
  const ExperimentConfig cfg = load_config(g);
  const Image original = load_image(original_path);
  const Image machine = load_image(machine_path);
  require_same_geometry(original, machine, "select-seed");

  const NoiseSchedule sched = cfg.schedule();
  const DenoiserSpec denoiser =
      build_denoiser(cfg, original.height(), original.width(), cfg.master_seed);
  const GuidanceConfig guidance{cfg.guidance_weight, machine, cfg.degradation};
  const SamplerConfig sampler{&sched, &denoiser, &guidance, cfg.eta, Exec::serial};

  SelectionConfig sel;
  sel.num_candidates = cfg.num_candidates;
  sel.truncation_step = cfg.selection_step();
  sel.total_steps = cfg.total_steps;
  sel.base_seed = cfg.base_seed;
  sel.eta = cfg.eta;

  std::cerr << "select-seed: " << sel.num_candidates << " candidates, t = " << sel.truncation_step
            << " of " << sel.total_steps << "\n";
  const auto records = generate_candidates(original, sel, sampler, Exec::parallel);
  SelectionReport report = select_seed(records);
  const Image final_image = finalize(records[report.chosen_index], sampler, machine);
  report.final_metrics = compute_metrics(final_image, original);

  SeedSidecar sidecar;
  sidecar.total_steps = static_cast<std::uint16_t>(cfg.total_steps);
  sidecar.num_candidates = static_cast<std::uint16_t>(cfg.num_candidates);
  sidecar.selected_index = static_cast<std::uint16_t>(report.chosen_index);
  sidecar.base_seed = cfg.base_seed;

  const fs::path side = sidecar_path.value_or(cfg.output_dir / "seed.gsds");
  const fs::path rep = report_path.value_or(cfg.output_dir / "selection.json");
  write_bytes(side, encode_sidecar(sidecar));
  if (final_path) save_image(*final_path, final_image);

  json out = {{"truncation_step", sel.truncation_step},
              {"total_steps", sel.total_steps},
              {"num_candidates", sel.num_candidates},
              {"base_seed", sel.base_seed},
              {"chosen_index", report.chosen_index},
              {"scores_db", report.scores_db},
              {"final", metrics_json(*report.final_metrics)},
              {"sidecar", side.string()},
              {"sidecar_bytes", kSidecarSize}};
  write_text(rep, out.dump(2) + "\n");
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_reconstruct(const GlobalOptions& g, const fs::path& machine_path,
                    const fs::path& sidecar_path, const fs::path& output) {
  const SeedSidecar sidecar = decode_sidecar(read_bytes(sidecar_path));
  ExperimentConfig cfg = load_config(g);
  if (sidecar.total_steps != cfg.total_steps) {
    std::cerr << "reconstruct: using T = " << sidecar.total_steps << " from the sidecar\n";
    cfg.total_steps = sidecar.total_steps;
    cfg.truncation_steps = {cfg.total_steps};
    cfg.truncation_step.reset();
  }
  const Image machine = load_image(machine_path);
  const NoiseSchedule sched = cfg.schedule();
  const DenoiserSpec denoiser =
      build_denoiser(cfg, machine.height(), machine.width(), cfg.master_seed);
  const GuidanceConfig guidance{cfg.guidance_weight, machine, cfg.degradation};
  const SamplerConfig sampler{&sched, &denoiser, &guidance, cfg.eta, Exec::parallel};

  const std::uint64_t seed = derive_seed(sidecar.base_seed, sidecar.selected_index);
  save_image(output, decode_from_seed(seed, sampler, machine));
  std::cout << json{{"selected_index", sidecar.selected_index},
                    {"derived_seed", seed},
                    {"output", output.string()}}
                   .dump()
            << "\n";
  return kExitOk;
}

int cmd_metrics(const fs::path& a, const fs::path& b) {
  const MetricReport m = compute_metrics(load_image(a), load_image(b));
  std::cout << metrics_json(m).dump() << "\n";
  return kExitOk;
}

int cmd_experiment(const GlobalOptions& g) {
  const ExperimentConfig cfg = load_config(g);
  std::cerr << "experiment: " << cfg.trials << " trial(s), writing to " << cfg.output_dir << "\n";
  const ExperimentReport report = run_experiment(cfg);
  const std::string csv = report_to_csv(report);
  write_text(cfg.output_dir / "report.json", report_to_json(report));
  write_text(cfg.output_dir / "report.csv", csv);
  std::cout << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed selection for guided-diffusion image reconstruction"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--workers", g.workers, "worker threads (0 = default)");
  app.add_option("--output-dir", g.output_dir, "output directory");
  app.add_option("--seed", g.seed, "master and base seed override");

  std::string a, b, c;
  std::optional<std::string> sidecar_out, report_out, final_out;

  auto* encode = app.add_subcommand("encode", "simulate the machine-oriented codec");
  encode->add_option("input", a)->required();
  encode->add_option("output", b)->required();

  auto* select = app.add_subcommand("select-seed", "encoder-side seed search");
  select->add_option("original", a)->required();
  select->add_option("machine", b)->required();
  select->add_option("--sidecar", sidecar_out, "sidecar output path");
  select->add_option("--report", report_out, "score report path");
  select->add_option("--final", final_out, "write the encoder-side finalized winner");

  auto* recon = app.add_subcommand("reconstruct", "decoder-side reconstruction");
  recon->add_option("machine", a)->required();
  recon->add_option("sidecar", b)->required();
  recon->add_option("output", c)->required();

  auto* metrics = app.add_subcommand("metrics", "PSNR, Y-PSNR and SSIM between two images");
  metrics->add_option("a", a)->required();
  metrics->add_option("b", b)->required();

  auto* experiment = app.add_subcommand("experiment", "run the seed-selection experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  auto opt_path = [](const std::optional<std::string>& s) -> std::optional<fs::path> {
    if (!s) return std::nullopt;
    return fs::path(*s);
  };

  try {
    if (encode->parsed()) return cmd_encode(g, a, b);
    if (select->parsed()) {
      return cmd_select_seed(g, a, b, opt_path(sidecar_out), opt_path(report_out),
                             opt_path(final_out));
    }
    if (recon->parsed()) return cmd_reconstruct(g, a, b, c);
    if (metrics->parsed()) return cmd_metrics(a, b);
    if (experiment->parsed()) return cmd_experiment(g);
  } catch (const CorruptionError& e) {
    std::cerr << "error: corrupted input: " << e.what() << "\n";
    return kExitCorrupt;
  } catch (const TruncationError& e) {
    std::cerr << "error: truncated input: " << e.what() << "\n";
    return kExitTruncated;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
