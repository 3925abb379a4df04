#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seedsel/diffusion.hpp"
#include "seedsel/errors.hpp"
#include "test_util.hpp"

using namespace seedsel;
using seedsel::testing::max_abs_diff;
using seedsel::testing::random_image;
using seedsel::testing::random_normal;

namespace {

const NoiseSchedule kSched = build_schedule(20, 1e-4, 0.2);

}  // namespace

TEST(ForwardSample, ZeroNoiseScalesSignal) {
  std::mt19937_64 gen(1);
  const Image x0 = random_image(gen, 4, 5);
  const Image out = forward_sample(x0, 7, Image(4, 5), kSched);
  const double a = std::sqrt(kSched.alpha_bar(7));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out.values()[i], a * x0.values()[i]);
}

TEST(ForwardSample, ZeroSignalScalesNoise) {
  std::mt19937_64 gen(2);
  const Image eps = random_normal(gen, 4, 5);
  const Image out = forward_sample(Image(4, 5), 3, eps, kSched);
  const double b = std::sqrt(1.0 - kSched.alpha_bar(3));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out.values()[i], b * eps.values()[i]);
}

TEST(ForwardSample, MatchesElementwiseRecomputation) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 20);
    const Image x0 = random_image(gen, 3, 6);
    const Image eps = random_normal(gen, 3, 6);
    const Image out = forward_sample(x0, k, eps, kSched);
    double ab = 1.0;
    for (int j = 1; j <= k; ++j) ab *= 1.0 - kSched.beta(j);
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_NEAR(out.values()[i], std::sqrt(ab) * x0.values()[i] + std::sqrt(1 - ab) * eps.values()[i],
                  1e-12);
    }
  }
}

TEST(ForwardSample, GeometryMismatchThrows) {
  EXPECT_THROW(forward_sample(Image(2, 2), 1, Image(2, 3), kSched), DimensionError);
  EXPECT_THROW(forward_sample(Image(2, 2), 0, Image(2, 2), kSched), ConfigError);
  EXPECT_THROW(forward_sample(Image(2, 2), 21, Image(2, 2), kSched), ConfigError);
}

TEST(PredictX0, InvertsForwardSample) {
  std::mt19937_64 gen(4);
  for (int k = 1; k <= 20; ++k) {
    const Image x0 = random_image(gen, 5, 5);
    const Image eps = random_normal(gen, 5, 5);
    const Image xk = forward_sample(x0, k, eps, kSched);
    EXPECT_LT(max_abs_diff(predict_x0(xk, eps, k, kSched), x0), 1e-9);
  }
}

TEST(PredictX0, ZeroNoiseDividesBySignalScale) {
  std::mt19937_64 gen(5);
  const Image xk = random_normal(gen, 3, 3);
  const Image out = predict_x0(xk, Image(3, 3), 12, kSched);
  const double a = std::sqrt(kSched.alpha_bar(12));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.values()[i], xk.values()[i] / a, 1e-15);
}

TEST(PredictX0, ReturnsRawUnclampedEstimate) {
  Image xk(1, 1, 50.0);
  const Image out = predict_x0(xk, Image(1, 1), 20, kSched);
  EXPECT_GT(out.values()[0], 1.5);
}

TEST(DenoiserEps, StandardGaussianCollapses) {
  std::mt19937_64 gen(6);
  const auto spec = DenoiserSpec::gaussian_mixture({{1.0, Image(3, 4), 1.0}});
  for (int k : {1, 5, 20}) {
    const Image xk = random_normal(gen, 3, 4);
    const Tensor eps = denoiser_eps(xk, k, spec, kSched);
    const double sd = std::sqrt(1.0 - kSched.alpha_bar(k));
    for (std::size_t i = 0; i < eps.size(); ++i) EXPECT_NEAR(eps.values()[i], sd * xk.values()[i], 1e-12);
  }
}

TEST(DenoiserEps, SingleReferenceRecoversIt) {
  std::mt19937_64 gen(7);
  const Image ref = random_image(gen, 4, 4);
  const auto spec = DenoiserSpec::empirical({ref});
  for (int k : {1, 10, 20}) {
    const Image xk = random_normal(gen, 4, 4);
    const Image x0 = predict_x0(xk, denoiser_eps(xk, k, spec, kSched), k, kSched);
    EXPECT_LT(max_abs_diff(x0, ref), 1e-9);
  }
}

// Naive mixture score: unnormalized densities without log-sum-exp.
TEST(DenoiserEps, MixtureMatchesBruteForce) {
  std::mt19937_64 gen(8);
  const int h = 2, w = 2;
  const double dim = 3.0 * h * w;
  std::vector<MixtureComponent> comps = {
      {0.2, random_image(gen, h, w), 0.3},
      {0.5, random_image(gen, h, w), 0.1},
      {0.3, random_image(gen, h, w), 0.0},
  };
  const auto spec = DenoiserSpec::gaussian_mixture(comps);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 20);
    const Image xk = random_image(gen, h, w, -1.0, 1.5);
    const double ab = kSched.alpha_bar(k);
    const double s = std::sqrt(ab);

    std::vector<double> dens(3);
    std::vector<double> var(3);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      var[i] = ab * comps[i].stddev * comps[i].stddev + 1 - ab;
      double d2 = 0.0;
      for (std::size_t p = 0; p < xk.size(); ++p) {
        const double diff = xk.values()[p] - s * comps[i].mean.values()[p];
        d2 += diff * diff;
      }
      dens[i] = comps[i].weight * std::pow(2 * std::numbers::pi * var[i], -dim / 2) *
                std::exp(-d2 / (2 * var[i]));
      total += dens[i];
    }
    const Tensor eps = denoiser_eps(xk, k, spec, kSched);
    for (std::size_t p = 0; p < xk.size(); ++p) {
      double score = 0.0;
      for (int i = 0; i < 3; ++i) {
        score += dens[i] / total * (s * comps[i].mean.values()[p] - xk.values()[p]) / var[i];
      }
      EXPECT_NEAR(eps.values()[p], -std::sqrt(1 - ab) * score, 1e-9);
    }
  }
}

TEST(DenoiserEps, ParallelKernelsMatchSerialBitwise) {
  std::mt19937_64 gen(9);
  std::vector<Image> refs;
  for (int i = 0; i < 17; ++i) refs.push_back(random_image(gen, 8, 8));
  const auto spec = DenoiserSpec::empirical(refs);
  const Image xk = random_normal(gen, 8, 8);
  const Tensor a = denoiser_eps(xk, 9, spec, kSched, Exec::serial);
  const Tensor b = denoiser_eps(xk, 9, spec, kSched, Exec::parallel);
  EXPECT_TRUE(seedsel::testing::bitwise_equal(a, b));
}

TEST(DenoiserEps, ExtremeLatentsStayFinite) {
  std::mt19937_64 gen(10);
  const auto spec = DenoiserSpec::empirical({random_image(gen, 4, 4), random_image(gen, 4, 4)});
  const Image xk(4, 4, 1e3);
  for (double v : denoiser_eps(xk, 1, spec, kSched).values()) EXPECT_TRUE(std::isfinite(v));
}

TEST(DenoiserSpec, RejectsInvalid) {
  EXPECT_THROW(DenoiserSpec::empirical({}), ConfigError);
  EXPECT_THROW(DenoiserSpec::gaussian_mixture({}), ConfigError);
  EXPECT_THROW(DenoiserSpec::gaussian_mixture({{0.4, Image(2, 2), 1.0}}), ConfigError);
  EXPECT_THROW(DenoiserSpec::gaussian_mixture({{0.5, Image(2, 2), 1.0}, {0.5, Image(3, 2), 1.0}}),
               DimensionError);
  EXPECT_THROW(DenoiserSpec::empirical({Image(2, 2), Image(2, 3)}), DimensionError);
}

TEST(Guidance, ZeroWeightIsIdentity) {
  std::mt19937_64 gen(11);
  const Image xk = random_normal(gen, 6, 6);
  const Tensor eps = random_normal(gen, 6, 6);
  const GuidanceConfig g{0.0, random_image(gen, 6, 6), {1.2, 0.4, 0}};
  EXPECT_EQ(apply_guidance(eps, xk, 5, g, kSched), eps);
}

TEST(Guidance, ConsistentEstimateGivesNoCorrection) {
  std::mt19937_64 gen(12);
  const Image x0 = random_image(gen, 5, 5);
  const Tensor eps = random_normal(gen, 5, 5);
  const Image xk = forward_sample(x0, 8, eps, kSched);
  const GuidanceConfig g{2.0, x0, {0.0, 1.0, 0}};
  EXPECT_LT(max_abs_diff(apply_guidance(eps, xk, 8, g, kSched), eps), 1e-12);
}

TEST(Guidance, RejectsMismatchedCondition) {
  const GuidanceConfig g{1.0, Image(3, 3), {}};
  EXPECT_THROW(apply_guidance(Image(4, 4), Image(4, 4), 1, g, kSched), DimensionError);
}

// Central finite differences of 0.5 * ||A x0_hat(x) - c||^2 with eps frozen.
TEST(Guidance, MatchesFiniteDifferences) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 20);
    const DegradationConfig op{0.4 + 0.8 * (trial / 4.0), 0.25 * trial, 0};
    const GuidanceConfig g{0.7, random_image(gen, 8, 8), op};
    const Image xk = random_normal(gen, 8, 8);
    const Tensor eps = random_normal(gen, 8, 8);

    auto objective = [&](const Image& x) {
      Image r = degrade_linear(predict_x0(x, eps, k, kSched), op);
      double f = 0.0;
      for (std::size_t p = 0; p < r.size(); ++p) {
        const double d = r.values()[p] - g.condition.values()[p];
        f += 0.5 * d * d;
      }
      return f;
    };

    const Tensor guided = apply_guidance(eps, xk, k, g, kSched);
    const double scale = g.weight * std::sqrt(1.0 - kSched.alpha_bar(k));
    double num = 0.0, den = 0.0;
    const double h = 1e-5;
    for (std::size_t p = 0; p < xk.size(); ++p) {
      Image plus = xk, minus = xk;
      plus.values()[p] += h;
      minus.values()[p] -= h;
      const double fd = (objective(plus) - objective(minus)) / (2 * h);
      const double analytic = (guided.values()[p] - eps.values()[p]) / scale;
      num += (fd - analytic) * (fd - analytic);
      den += fd * fd;
    }
    EXPECT_LT(std::sqrt(num / den), 1e-4) << "trial " << trial;
  }
}
