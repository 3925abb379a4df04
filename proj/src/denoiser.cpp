#include <algorithm>
#include <cmath>
#include <limits>

#include "seedsel/diffusion.hpp"
#include "seedsel/errors.hpp"

namespace seedsel {

DenoiserSpec DenoiserSpec::gaussian_mixture(std::vector<MixtureComponent> components) {
  DenoiserSpec s;
  s.kind = DenoiserKind::gaussian_mixture;
  s.components = std::move(components);
  s.validate();
  return s;
}

DenoiserSpec DenoiserSpec::empirical(std::vector<Image> dataset) {
  DenoiserSpec s;
  s.kind = DenoiserKind::empirical;
  s.dataset = std::move(dataset);
  s.validate();
  return s;
}

void DenoiserSpec::validate() const {
  if (kind == DenoiserKind::empirical) {
    if (dataset.empty()) throw ConfigError("denoiser: empirical dataset is empty");
    for (const Image& img : dataset) require_same_geometry(img, dataset.front(), "denoiser dataset");
    return;
  }
  if (components.empty()) throw ConfigError("denoiser: mixture has no components");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0)) throw ConfigError("denoiser: negative mixture weight");
    if (!(c.stddev >= 0.0)) throw ConfigError("denoiser: negative component stddev");
    require_same_geometry(c.mean, components.front().mean, "denoiser mixture means");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("denoiser: mixture weights must sum to 1");
}

int DenoiserSpec::height() const {
  return kind == DenoiserKind::empirical ? dataset.front().height()
                                         : components.front().mean.height();
}

int DenoiserSpec::width() const {
  return kind == DenoiserKind::empirical ? dataset.front().width()
                                         : components.front().mean.width();
}

namespace {

void require_level(int k, const NoiseSchedule& sched) {
  if (k < 1 || k > sched.total_steps()) {
    throw ConfigError("noise level " + std::to_string(k) + " outside [1, " +
                      std::to_string(sched.total_steps()) + "]");
  }
}

// Normalized softmax of `logits` via log-sum-exp. Entries equal to -inf get
// probability zero.
std::vector<double> softmax(const std::vector<double>& logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - peak);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

Tensor empirical_eps(const Image& x_k, int k, const DenoiserSpec& spec,
                     const NoiseSchedule& sched, Exec exec) {
  const double ab = sched.alpha_bar(k);
  const double s = std::sqrt(ab);
  const double var = 1.0 - ab;
  std::vector<double> logits = kernels::scaled_distances(x_k, spec.dataset, s, exec);
  for (double& l : logits) l = -l / (2.0 * var);
  const std::vector<double> post = softmax(logits);
  const Image x0_hat = kernels::weighted_sum(spec.dataset, post, exec);

  // Invert predict_x0 for the noise that yields exactly this x0_hat.
  Tensor eps(x_k.height(), x_k.width());
  const double inv_sd = 1.0 / std::sqrt(var);
  auto e = eps.values();
  auto xv = x_k.values();
  auto x0 = x0_hat.values();
  for (std::size_t p = 0; p < e.size(); ++p) e[p] = (xv[p] - s * x0[p]) * inv_sd;
  return eps;
}

Tensor mixture_eps(const Image& x_k, int k, const DenoiserSpec& spec, const NoiseSchedule& sched,
                   Exec exec) {
  const double ab = sched.alpha_bar(k);
  const double s = std::sqrt(ab);
  const double dim = static_cast<double>(x_k.size());
  const std::size_t m = spec.components.size();

  std::vector<Image> means;
  means.reserve(m);
  for (const auto& c : spec.components) means.push_back(c.mean);
  const std::vector<double> dist = kernels::scaled_distances(x_k, means, s, exec);

  std::vector<double> var(m);
  std::vector<double> logits(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = spec.components[i];
    var[i] = ab * c.stddev * c.stddev + (1.0 - ab);
    logits[i] = c.weight > 0.0 ? std::log(c.weight) - 0.5 * dim * std::log(var[i]) -
                                     dist[i] / (2.0 * var[i])
                               : -std::numeric_limits<double>::infinity();
  }
  const std::vector<double> resp = softmax(logits);

  // score(x) = sum_i r_i (s mu_i - x) / v_i
  std::vector<double> mean_coeff(m);
  double self_coeff = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_coeff[i] = resp[i] * s / var[i];
    self_coeff += resp[i] / var[i];
  }
  Image eps = kernels::weighted_sum(means, mean_coeff, exec);
  const double sd = std::sqrt(1.0 - ab);
  auto e = eps.values();
  auto xv = x_k.values();
  for (std::size_t p = 0; p < e.size(); ++p) e[p] = -sd * (e[p] - self_coeff * xv[p]);
  return eps;
}

}  // namespace

Image forward_sample(const Image& x0, int k, const Tensor& eps, const NoiseSchedule& sched) {
  require_same_geometry(x0, eps, "forward_sample");
  require_level(k, sched);
  const double ab = sched.alpha_bar(k);
  const double a = std::sqrt(ab);
  const double b = std::sqrt(1.0 - ab);
  Image out(x0.height(), x0.width());
  auto o = out.values();
  auto xv = x0.values();
  auto ev = eps.values();
  for (std::size_t p = 0; p < o.size(); ++p) o[p] = a * xv[p] + b * ev[p];
  return out;
}

Image predict_x0(const Image& x_k, const Tensor& eps_hat, int k, const NoiseSchedule& sched) {
  require_same_geometry(x_k, eps_hat, "predict_x0");
  require_level(k, sched);
  const double ab = sched.alpha_bar(k);
  const double a = std::sqrt(ab);
  const double b = std::sqrt(1.0 - ab);
  Image out(x_k.height(), x_k.width());
  auto o = out.values();
  auto xv = x_k.values();
  auto ev = eps_hat.values();
  for (std::size_t p = 0; p < o.size(); ++p) o[p] = (xv[p] - b * ev[p]) / a;
  return out;
}

Tensor denoiser_eps(const Image& x_k, int k, const DenoiserSpec& spec, const NoiseSchedule& sched,
                    Exec exec) {
  spec.validate();
  require_level(k, sched);
  if (x_k.height() != spec.height() || x_k.width() != spec.width()) {
    throw DimensionError("denoiser_eps: latent geometry does not match the denoiser");
  }
  return spec.kind == DenoiserKind::empirical ? empirical_eps(x_k, k, spec, sched, exec)
                                              : mixture_eps(x_k, k, spec, sched, exec);
}

Tensor apply_guidance(const Tensor& eps_hat, const Image& x_k, int k, const GuidanceConfig& g,
                      const NoiseSchedule& sched) {
  if (!(g.weight >= 0.0)) throw ConfigError("guidance.weight must be >= 0");
  require_same_geometry(eps_hat, x_k, "apply_guidance");
  require_same_geometry(g.condition, x_k, "apply_guidance condition");
  if (g.weight == 0.0) return eps_hat;

  const double ab = sched.alpha_bar(k);
  const Image x0_hat = predict_x0(x_k, eps_hat, k, sched);
  Image residual = degrade_linear(x0_hat, g.op);
  {
    auto r = residual.values();
    auto c = g.condition.values();
    for (std::size_t p = 0; p < r.size(); ++p) r[p] -= c[p];
  }
  const Image back = degrade_adjoint(residual, g.op);

  const double scale = g.weight * std::sqrt(1.0 - ab) / std::sqrt(ab);
  Tensor out = eps_hat;
  auto o = out.values();
  auto bv = back.values();
  for (std::size_t p = 0; p < o.size(); ++p) o[p] += scale * bv[p];
  return out;
}

}  // namespace seedsel
