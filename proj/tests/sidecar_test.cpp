#include <gtest/gtest.h>

#include <random>

#include "seedsel/errors.hpp"
#include "seedsel/sidecar.hpp"

using namespace seedsel;

namespace {

// Bitwise CRC-32, reflected IEEE polynomial.
std::uint32_t reference_crc(std::span<const std::uint8_t> bytes) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::uint8_t b : bytes) {
    crc ^= b;
    for (int i = 0; i < 8; ++i) crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

SeedSidecar random_sidecar(std::mt19937_64& gen) {
  SeedSidecar s;
  s.total_steps = static_cast<std::uint16_t>(1 + gen() % 65535);
  s.num_candidates = static_cast<std::uint16_t>(1 + gen() % 65535);
  s.selected_index = static_cast<std::uint16_t>(gen() % s.num_candidates);
  s.base_seed = gen();
  return s;
}

}  // namespace

TEST(Crc32, MatchesReference) {
  const std::string check = "123456789";
  const std::vector<std::uint8_t> bytes(check.begin(), check.end());
  EXPECT_EQ(crc32_ieee(bytes), 0xCBF43926u);
  EXPECT_EQ(reference_crc(bytes), 0xCBF43926u);
}

TEST(Sidecar, HandPackedLayout) {
  const auto bytes = encode_sidecar({20, 5, 2, 42});
  const std::vector<std::uint8_t> payload = {0x47, 0x53, 0x44, 0x53, 0x01, 0x14, 0x00, 0x05, 0x00, 0x02,
                                             0x00, 0x2A, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00};
  ASSERT_EQ(bytes.size(), payload.size() + 4);
  EXPECT_TRUE(std::equal(payload.begin(), payload.end(), bytes.begin()));
  const std::uint32_t crc = reference_crc(payload);
  EXPECT_EQ(crc, 0x5E4CD097u);
  EXPECT_EQ(bytes[19], crc & 0xFF);
  EXPECT_EQ(bytes[20], (crc >> 8) & 0xFF);
  EXPECT_EQ(bytes[21], (crc >> 16) & 0xFF);
  EXPECT_EQ(bytes[22], crc >> 24);
}

TEST(Sidecar, SingleCandidate) {
  const auto bytes = encode_sidecar({20, 1, 0, 7});
  EXPECT_EQ(bytes.size(), kSidecarSize);
  EXPECT_EQ(decode_sidecar(bytes), (SeedSidecar{20, 1, 0, 7}));
}

TEST(Sidecar, RoundTripAndConstantSize) {
  std::mt19937_64 gen(101);
  for (int i = 0; i < 500; ++i) {
    const SeedSidecar s = random_sidecar(gen);
    const auto bytes = encode_sidecar(s);
    EXPECT_EQ(bytes.size(), kSidecarSize);
    EXPECT_EQ(decode_sidecar(bytes), s);
  }
}

TEST(Sidecar, IndexOutOfRangeRejected) {
  EXPECT_THROW(encode_sidecar({20, 5, 5, 0}), EncodingError);
  // Hand-built record with index == N and a valid CRC.
  std::vector<std::uint8_t> bytes = encode_sidecar({20, 5, 4, 0});
  bytes[9] = 5;
  bytes.resize(19);
  const std::uint32_t crc = reference_crc(bytes);
  for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));
  EXPECT_THROW(decode_sidecar(bytes), SemanticError);
}

TEST(Sidecar, BitFlipIsCorruption) {
  auto bytes = encode_sidecar({20, 5, 2, 42});
  bytes[13] ^= 0x10;
  EXPECT_THROW(decode_sidecar(bytes), CorruptionError);
}

TEST(Sidecar, ShortInputIsTruncation) {
  auto bytes = encode_sidecar({20, 5, 2, 42});
  bytes.resize(18);
  EXPECT_THROW(decode_sidecar(bytes), TruncationError);
  EXPECT_THROW(decode_sidecar(std::vector<std::uint8_t>{}), TruncationError);
}

TEST(Sidecar, ForeignMagicAndVersion) {
  auto bytes = encode_sidecar({20, 5, 2, 42});
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  try {
    decode_sidecar(bad_magic);
    FAIL();
  } catch (const CorruptionError&) {
    FAIL() << "bad magic reported as corruption";
  } catch (const FormatError&) {
  }
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_THROW(decode_sidecar(bad_version), FormatError);
  bytes.push_back(0);
  EXPECT_THROW(decode_sidecar(bytes), FormatError);
}

TEST(Sidecar, EverySingleBitFlipDetected) {
  std::mt19937_64 gen(102);
  for (int rec = 0; rec < 50; ++rec) {
    const auto bytes = encode_sidecar(random_sidecar(gen));
    for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
      auto flipped = bytes;
      flipped[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      EXPECT_THROW(decode_sidecar(flipped), FormatError);
    }
  }
}
