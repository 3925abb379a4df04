#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "seedsel/image.hpp"

namespace seedsel {

// One splitmix64 step: advance the state by the golden-ratio increment and
// return the finalizer of the new state.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Seed of candidate `index` under `base_seed`: the first splitmix64 output
// for state base_seed + index. The finalizer is a bijection, so distinct
// indices never collide under one base.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Per-trajectory random stream.
///
/// Engine: std::mt19937_64 seeded once with the trajectory seed. Uniforms
/// take the top 53 bits of one engine output. Normals use Box-Muller on two
/// uniforms and yield a pair; a tensor fill consumes pairs in storage order
/// (channel, row, column) and drops the spare value of an odd-sized tensor,
/// so no cached state exists between draws and the engine state alone is the
/// full stream state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform();           // [0, 1)
  double uniform_open_low();  // (0, 1]

  // Fresh tensor of iid standard normals.
  Tensor normal_tensor(int height, int width);

  std::string serialize() const;
  static Rng deserialize(const std::string& text);

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seedsel
