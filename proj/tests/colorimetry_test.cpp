#include <gtest/gtest.h>

#include "seedsel/colorimetry.hpp"
#include "seedsel/errors.hpp"
#include "seedsel/metrics.hpp"
#include "test_util.hpp"

using namespace seedsel;
using seedsel::testing::max_abs_diff;
using seedsel::testing::random_image;

namespace {

Image pixel(double r, double g, double b) {
  Image img(1, 1);
  img.at(0, 0, 0) = r;
  img.at(1, 0, 0) = g;
  img.at(2, 0, 0) = b;
  return img;
}

}  // namespace

TEST(YCbCr, WhiteAndBlackAreNeutral) {
  const auto w = rgb_to_ycbcr(pixel(1, 1, 1));
  EXPECT_NEAR(w.y[0], 1.0, 1e-15);
  EXPECT_NEAR(w.cb[0], 0.5, 1e-15);
  EXPECT_NEAR(w.cr[0], 0.5, 1e-15);
  const auto k = rgb_to_ycbcr(pixel(0, 0, 0));
  EXPECT_EQ(k.y[0], 0.0);
  EXPECT_EQ(k.cb[0], 0.5);
  EXPECT_EQ(k.cr[0], 0.5);
}

TEST(YCbCr, PureRed) {
  const auto r = rgb_to_ycbcr(pixel(1, 0, 0));
  EXPECT_NEAR(r.y[0], 0.299, 1e-15);
  EXPECT_NEAR(r.cr[0], 0.713 * 0.701 + 0.5, 1e-15);  // 0.999813
  EXPECT_NEAR(r.cb[0], 0.564 * -0.299 + 0.5, 1e-15);  // 0.331364
  EXPECT_NEAR(r.cr[0], 0.999813, 1e-12);
  EXPECT_NEAR(r.cb[0], 0.331364, 1e-12);
}

TEST(YCbCr, NeutralChromaGivesGray) {
  YCbCrImage x{1, 1, {0.37}, {0.5}, {0.5}};
  const Image g = ycbcr_to_rgb(x);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(g.at(c, 0, 0), 0.37, 1e-15);
}

TEST(YCbCr, RoundTrip) {
  std::mt19937_64 gen(51);
  const Image x = random_image(gen, 1, 1000);
  EXPECT_LT(max_abs_diff(ycbcr_to_rgb(rgb_to_ycbcr(x)), x), 1e-6);
}

TEST(YCbCr, OutOfGamutIsClamped) {
  YCbCrImage x{1, 1, {0.0}, {1.0}, {1.0}};
  const Image g = ycbcr_to_rgb(x);
  for (double v : g.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(CcMerge, SelfMergeIsIdentity) {
  std::mt19937_64 gen(52);
  const Image x = random_image(gen, 8, 8);
  EXPECT_LT(max_abs_diff(cc_merge(x, x), x), 1e-6);
}

TEST(CcMerge, GrayTakesMachineChroma) {
  const Image gray(2, 2, 0.5);
  // A muted warm tone keeps the merged result inside the RGB cube.
  Image red(2, 2);
  for (double& v : red.plane(0)) v = 0.6;
  for (double& v : red.plane(1)) v = 0.45;
  for (double& v : red.plane(2)) v = 0.4;
  const Image merged = cc_merge(gray, red);
  const auto out = rgb_to_ycbcr(merged);
  const auto want = rgb_to_ycbcr(red);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(out.y[i], 0.5, 1e-12);
    EXPECT_NEAR(out.cb[i], want.cb[i], 1e-12);
    EXPECT_NEAR(out.cr[i], want.cr[i], 1e-12);
  }
}

TEST(CcMerge, PlaneExactBeforeClamp) {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Image g = random_image(gen, 6, 6);
    const Image m = random_image(gen, 6, 6);
    const Image merged = cc_merge(g, m);
    // Unclamped reconstruction from the expected planes marks where the
    // clamp was active.
    YCbCrImage expect = rgb_to_ycbcr(m);
    expect.y = luma_plane(g);
    const Image raw = ycbcr_to_rgb_unclamped(expect);
    const auto out = rgb_to_ycbcr(merged);
    for (std::size_t i = 0; i < expect.y.size(); ++i) {
      bool clamped = false;
      for (int c = 0; c < 3; ++c) clamped |= raw.plane(c)[i] < 0.0 || raw.plane(c)[i] > 1.0;
      if (clamped) continue;
      EXPECT_NEAR(out.y[i], expect.y[i], 1e-6);
      EXPECT_NEAR(out.cb[i], expect.cb[i], 1e-6);
      EXPECT_NEAR(out.cr[i], expect.cr[i], 1e-6);
    }
  }
}

TEST(CcMerge, GeometryMismatchThrows) {
  EXPECT_THROW(cc_merge(Image(2, 2), Image(2, 3)), DimensionError);
}

// Y-PSNR ignores the merge where nothing clips: selection may score pre-merge.
TEST(CcMerge, YPsnrInvariant) {
  std::mt19937_64 gen(54);
  for (int trial = 0; trial < 20; ++trial) {
    // Mid-range images keep the merged result inside the gamut.
    const Image g = random_image(gen, 12, 12, 0.35, 0.65);
    const Image m = random_image(gen, 12, 12, 0.4, 0.6);
    const Image truth = random_image(gen, 12, 12);
    EXPECT_NEAR(y_psnr(cc_merge(g, m), truth), y_psnr(g, truth), 1e-6);
  }
}
